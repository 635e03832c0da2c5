#pragma once

#include "photonq/circuit_ir.hpp"
#include "photonq/encoding.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace photonq {

// Dense statevector over n qubits.  Qubit 0 is the most significant index
// bit, so a basis index read as a binary string (MSB first) lists the qubit
// values in qubit order.
struct StateVector {
    int n_qubits = 0;
    std::vector<cplx> amps;

    double norm() const;
};

// Simulation size cap; override with the PHOTONQ_MAX_QUBITS environment
// variable.
int max_simulated_qubits();

StateVector zero_state(int n_qubits);

// Applies one gate in place.  `shift` is added to the gate's angle after
// parameter evaluation (used by shift-rule differentiation).
void apply_gate(StateVector& state, const Gate& gate, const ParamMap& params, double shift = 0);

// Runs the circuit on |0...0>.  When shift_gate >= 0 the angle of that gate
// (by position in circuit.gates) is offset by shift_delta.
StateVector run(const GateCircuit& circuit, const ParamMap& params = {}, int shift_gate = -1,
                double shift_delta = 0);

// <state|sum|state> for a Hermitian sum.
double expectation(const StateVector& state, const PauliSum& sum);

double all_zero_probability(const StateVector& state);

// Probability that every listed qubit reads 0.
double zero_probability(const StateVector& state, const std::vector<int>& qubits);

// Measurement counts keyed by basis index; deterministic for a fixed seed.
std::map<std::uint64_t, long> sample(const StateVector& state, long shots, std::uint64_t seed);

std::string index_bitstring(std::uint64_t index, int n_qubits);

// Decodes a basis index into register occupations; nullopt when any register
// holds a value above the cutoff.
std::optional<FockState> decode_index(std::uint64_t index, const SetupLayout& layout);
std::uint64_t fock_index(const FockState& state, const SetupLayout& layout);

// Probability mass on indices that decode to occupation vectors with the
// expected total photon count.
double valid_state_fraction(const StateVector& state, const SetupLayout& layout,
                            int expected_photons);

} // namespace photonq

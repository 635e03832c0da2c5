#pragma once

#include "photonq/circuit_ir.hpp"
#include "photonq/encoding.hpp"
#include "photonq/fock_oracle.hpp"
#include "photonq/simulator.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace photonq {

// Projector onto |0...0> of the listed qubits (identity elsewhere); the
// efficient stand-in for the corresponding 2^k-term Pauli expansion.
struct ZeroProjector {
    std::vector<int> qubits;
};

using Observable = std::variant<PauliSum, ZeroProjector>;

struct ObjectiveLeaf {
    std::shared_ptr<const GateCircuit> circuit;
    Observable observable;
};

// Fidelity objective: Leaf(circuit, observable), optionally divided by a
// second leaf (post-selection normalization). Both shipped builders put the
// numerator and denominator on the same circuit object, so evaluation costs
// one simulation.
struct Objective {
    ObjectiveLeaf numerator;
    std::optional<ObjectiveLeaf> denominator;
    std::vector<std::string> parameters;  // sorted free-parameter names

    bool is_ratio() const { return denominator.has_value(); }
    ParamMap to_params(const std::vector<double>& x) const;
    std::vector<double> to_vector(const ParamMap& params) const;
};

struct EvalResult {
    double value = 0;
    double denominator = 1;
    bool degenerate = false;  // denominator below 1e-10; value forced to 0
};

double eval_observable(const StateVector& state, const Observable& obs);

// Evaluates several observables on one circuit run; shift_gate/shift_delta
// offset one gate's angle (parameter-shift plumbing).
std::vector<double> eval_observables(const GateCircuit& circuit,
                                     const std::vector<Observable>& observables,
                                     const ParamMap& params, int shift_gate = -1,
                                     double shift_delta = 0);

EvalResult evaluate(const Objective& objective, const ParamMap& params);

// Circuit U with U|target> = |0...0> up to global phase (checked to 1e-10).
// Uniform basis-state superpositions get the inverted rotation-cascade
// preparation; anything else goes through sequential two-level merges.
GateCircuit target_disentangler(const SetupLayout& layout, const FockVector& target);

// Inverse of the (alpha, beta) qutrit preparation on the trigger path's mode
// qubits: maps the one-photon trigger state to |000>.
GateCircuit herald_trigger_circuit(const SetupLayout& layout, const HeraldSpec& herald);

// Parity encoding E: one fresh ancilla per path, X then CNOTs from the path's
// mode qubits; the ancilla reads 0 iff the path holds an odd photon count
// (cutoff 1: exactly one photon for the states of interest).
std::pair<GateCircuit, std::vector<int>> postselect_encoding(const SetupLayout& layout,
                                                             const std::vector<std::string>& paths);

Objective build_post_selected_fidelity(const SetupLayout& layout, const GateCircuit& setup,
                                       const FockVector& target, const HeraldSpec& herald,
                                       const std::vector<std::string>& postselect_paths);

Objective build_plain_fidelity(const SetupLayout& layout, const GateCircuit& setup,
                               const FockVector& target);

} // namespace photonq

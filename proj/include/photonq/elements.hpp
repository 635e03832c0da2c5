#pragma once

#include "photonq/circuit_ir.hpp"
#include "photonq/encoding.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace photonq {

// Element catalog. Angle parameters are affine expressions (named symbols or
// constants); psi is a unit-modulus complex phase.
struct BeamSplitter {
    std::string path_a, path_b;
    ParamExpr theta;
    cplx psi{1.0, 0.0};
};
struct PhaseShifter {
    std::string path;
    std::optional<int> mode;  // nullopt = every mode of the path
    ParamExpr phi;
};
struct DovePrism {
    std::string path;
    ParamExpr phi;
};
struct PhotonicSwap {
    std::string path_1;
    int mode_1 = 0;
    std::string path_2;
    int mode_2 = 0;
};
struct Mirror {
    std::string path;
};
struct Hologram {
    std::string path;
};
struct PairSource {
    std::string path_a;
    int mode_a = 0;
    std::string path_b;
    int mode_b = 0;
    ParamExpr omega;
};
struct PhotonInject {
    std::string path;
    int mode = 0;
    int count = 1;
};

using OpticalElement = std::variant<BeamSplitter, PhaseShifter, DovePrism, PhotonicSwap,
                                    Mirror, Hologram, PairSource, PhotonInject>;

// BS(theta, psi) = exp(i theta sum_m (psi a+_{a,m} a_{b,m} + psi* a+_{b,m} a_{a,m})).
// The per-mode factors commute exactly (disjoint registers). At cutoff 1 each
// factor compiles to the exact compact form (PhaseS frame for arg(psi), then
// the commuting XX and YY exponentials); above cutoff 1 it is Trotterized.
GateCircuit compile_beam_splitter(const SetupLayout& layout, const BeamSplitter& bs, int steps);

// P(phi) -> S(2^{n-1} phi) x ... x S(phi), most-significant bit first. Exact.
GateCircuit compile_phase_shifter(const SetupLayout& layout, const PhaseShifter& ps);

// DP(phi) = prod_m P(m phi). Exact.
GateCircuit compile_dove_prism(const SetupLayout& layout, const DovePrism& dp);

// Qubit-wise swap of the two mode registers. Exact.
GateCircuit compile_photonic_swap(const SetupLayout& layout, const PhotonicSwap& sw);

// Mode-sign flip: photonic swaps pairing +k <-> -k; mode 0 untouched.
GateCircuit compile_mirror(const SetupLayout& layout, const Mirror& m);

// Cyclic mode shift (every mode register moves one position up the mode list,
// the top one wraps to the bottom), as a chain of adjacent photonic swaps.
GateCircuit compile_hologram(const SetupLayout& layout, const Hologram& h);

// U(omega) = exp((omega/2)(a+b+ - ab)) = exp(-i(omega/2) H), H = i(a+b+ - ab).
GateCircuit compile_pair_source(const SetupLayout& layout, const PairSource& src, int steps);

// X gates writing the binary occupation into an empty register.
GateCircuit compile_photon_inject(const SetupLayout& layout, const PhotonInject& inj);

// Concatenation of the compiled elements in listed order. When `warnings` is
// given, setup-level diagnostics are appended to it (currently: a hologram
// whose wrapping top mode can be populated by an injection or a pair source).
GateCircuit compile_setup(const SetupLayout& layout, const std::vector<OpticalElement>& elements,
                          int steps, std::vector<std::string>* warnings = nullptr);

// W-style cascade preparing cos(a)|100> + sin(a)cos(b)|010> + sin(a)sin(b)|001>
// on three mode qubits of one path (from |000>). Used by the heralding trigger
// and, with constant angles, by the bell3 initial-state preparation.
GateCircuit qutrit_prep_circuit(const std::vector<int>& qubits, const ParamExpr& alpha,
                                const ParamExpr& beta);

// Three-dimensional Bell pair between two 3-mode paths at cutoff 1:
// (1/sqrt(3)) sum_m |1_{m,p} 1_{sigma(m),q}>, sigma(m) = -m for anti-correlated
// pairs (the SPDC case) and m for correlated ones.
GateCircuit bell3_prep_circuit(const SetupLayout& layout, const std::string& path_1,
                               const std::string& path_2, bool anti);

} // namespace photonq

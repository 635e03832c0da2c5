#pragma once

#include "photonq/common.hpp"
#include "photonq/encoding.hpp"

#include <set>
#include <string>
#include <vector>

namespace photonq {

// Affine parameter expression coeff * <name> + offset; a constant when the
// name is empty. Every use case in the element catalog is a multiple of a
// shared angle, so affine is the whole grammar.
struct ParamExpr {
    std::string name;
    double coeff = 0.0;
    double offset = 0.0;

    bool is_constant() const { return name.empty(); }
    double value(const ParamMap& params) const;  // throws BindingError when unbound

    ParamExpr scaled(double f) const { return {name, coeff * f, offset * f}; }
    ParamExpr shifted(double s) const { return {name, coeff, offset + s}; }

    static ParamExpr constant(double v) { return {"", 0.0, v}; }
    static ParamExpr symbol(const std::string& n, double c = 1.0, double d = 0.0);
};

enum class GateKind { X, PhaseS, RotX, RotY, RotZ, ControlledRot, Swap, CNOT, PauliExp };
enum class Axis { X, Y, Z, S };  // rotation axis; S = PhaseS-style phase

// Gate semantics (angle a = bound parameter expression):
//   X           bit flip on q0
//   PhaseS      diag(1, e^{ia}) on q0, i.e. exp(-i(a/2)(Z-1))
//   RotX/Y/Z    exp(-i(a/2) P) on q0
//   ControlledRot  rotation (by axis) on q0 applied when all controls are 1
//   Swap        q0 <-> q1
//   CNOT        control q0, target q1
//   PauliExp    exp(-i * a * c * P), P = term.ops, c = real term coefficient
struct Gate {
    GateKind kind = GateKind::X;
    int q0 = -1;
    int q1 = -1;
    std::vector<int> controls;
    Axis axis = Axis::Z;
    PauliTerm term;
    ParamExpr angle;

    static Gate x(int q);
    static Gate phase_s(int q, ParamExpr a);
    static Gate rot(Axis ax, int q, ParamExpr a);
    static Gate controlled_rot(std::vector<int> controls, int target, Axis ax, ParamExpr a);
    static Gate swap_gate(int a, int b);
    static Gate cnot(int control, int target);
    static Gate pauli_exp(PauliTerm term, ParamExpr a);

    bool parametrized() const;  // carries an angle expression
    int max_qubit() const;
};

// Ordered gate list plus the parameter symbol table (name -> current value).
struct GateCircuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
    ParamMap params;

    std::set<std::string> free_parameters() const;
    bool fully_bound() const;

    GateCircuit& append(const Gate& g);
    GateCircuit& append(const GateCircuit& other);  // concatenation, n_qubits = max
};

// Returns a copy with all free parameters assigned; missing name -> BindingError.
GateCircuit bind(const GateCircuit& circuit, const ParamMap& assignments);

// Exact inverse circuit (reversed gates, negated angles).
GateCircuit inverse(const GateCircuit& circuit);

// First-order product formula for exp(-i * angle * generator): `steps`
// repetitions of exp(-i (angle/steps) c_t P_t) over the canonically ordered
// terms. The generator must be Hermitian and must not contain an identity
// term (none of the element generators does).
GateCircuit trotterize(const PauliSum& generator, const ParamExpr& angle, int steps);

// Standard lowering of one PauliExp gate: single-qubit basis changes, CNOT
// ladder, RotZ(2 * coeff * angle), and the conjugate tail.
std::vector<Gate> lower_pauliexp(const Gate& g);

// Circuit with every PauliExp gate lowered.
GateCircuit lower_all_pauliexp(const GateCircuit& circuit);

// Stable one-gate-per-line text form (see README for the grammar).
std::string dump(const GateCircuit& circuit);
std::string dump(const Gate& gate);

} // namespace photonq

#include "photonq/circuit_ir.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace photonq {

double ParamExpr::value(const ParamMap& params) const {
    if (is_constant()) return offset;
    auto it = params.find(name);
    if (it == params.end()) throw BindingError("unbound parameter '" + name + "'");
    return coeff * it->second + offset;
}

ParamExpr ParamExpr::symbol(const std::string& n, double c, double d) {
    if (n.empty()) throw ConfigError("parameter name must be nonempty");
    return {n, c, d};
}

Gate Gate::x(int q) {
    Gate g;
    g.kind = GateKind::X;
    g.q0 = q;
    return g;
}

Gate Gate::phase_s(int q, ParamExpr a) {
    Gate g;
    g.kind = GateKind::PhaseS;
    g.q0 = q;
    g.angle = std::move(a);
    return g;
}

Gate Gate::rot(Axis ax, int q, ParamExpr a) {
    Gate g;
    switch (ax) {
        case Axis::X: g.kind = GateKind::RotX; break;
        case Axis::Y: g.kind = GateKind::RotY; break;
        case Axis::Z: g.kind = GateKind::RotZ; break;
        case Axis::S: g.kind = GateKind::PhaseS; break;
    }
    g.q0 = q;
    g.angle = std::move(a);
    return g;
}

Gate Gate::controlled_rot(std::vector<int> controls, int target, Axis ax, ParamExpr a) {
    if (controls.empty()) throw ConfigError("controlled rotation needs at least one control");
    Gate g;
    g.kind = GateKind::ControlledRot;
    g.q0 = target;
    g.controls = std::move(controls);
    g.axis = ax;
    g.angle = std::move(a);
    for (int c : g.controls)
        if (c == target) throw ConfigError("control equals target");
    return g;
}

Gate Gate::swap_gate(int a, int b) {
    if (a == b) throw ConfigError("swap needs two distinct qubits");
    Gate g;
    g.kind = GateKind::Swap;
    g.q0 = a;
    g.q1 = b;
    return g;
}

Gate Gate::cnot(int control, int target) {
    if (control == target) throw ConfigError("control equals target");
    Gate g;
    g.kind = GateKind::CNOT;
    g.q0 = control;
    g.q1 = target;
    return g;
}

Gate Gate::pauli_exp(PauliTerm term, ParamExpr a) {
    if (term.ops.empty()) throw ValidationError("PauliExp term must be nonempty");
    if (std::abs(term.coeff.imag()) > 1e-12)
        throw ValidationError("PauliExp coefficient must be real");
    Gate g;
    g.kind = GateKind::PauliExp;
    g.term = std::move(term);
    g.angle = std::move(a);
    return g;
}

bool Gate::parametrized() const {
    switch (kind) {
        case GateKind::PhaseS:
        case GateKind::RotX:
        case GateKind::RotY:
        case GateKind::RotZ:
        case GateKind::ControlledRot:
        case GateKind::PauliExp: return true;
        default: return false;
    }
}

int Gate::max_qubit() const {
    int m = std::max(q0, q1);
    for (int c : controls) m = std::max(m, c);
    if (kind == GateKind::PauliExp && !term.ops.empty())
        m = std::max(m, term.ops.rbegin()->first);
    return m;
}

std::set<std::string> GateCircuit::free_parameters() const {
    std::set<std::string> names;
    for (const auto& g : gates)
        if (g.parametrized() && !g.angle.is_constant()) names.insert(g.angle.name);
    return names;
}

bool GateCircuit::fully_bound() const {
    for (const auto& name : free_parameters())
        if (!params.count(name)) return false;
    return true;
}

GateCircuit& GateCircuit::append(const Gate& g) {
    n_qubits = std::max(n_qubits, g.max_qubit() + 1);
    gates.push_back(g);
    return *this;
}

GateCircuit& GateCircuit::append(const GateCircuit& other) {
    n_qubits = std::max(n_qubits, other.n_qubits);
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    for (const auto& [k, v] : other.params) params.emplace(k, v);
    return *this;
}

GateCircuit bind(const GateCircuit& circuit, const ParamMap& assignments) {
    GateCircuit bound = circuit;
    for (const auto& name : circuit.free_parameters()) {
        auto it = assignments.find(name);
        if (it == assignments.end())
            throw BindingError("bind: missing assignment for parameter '" + name + "'");
        bound.params[name] = it->second;
    }
    return bound;
}

GateCircuit inverse(const GateCircuit& circuit) {
    GateCircuit inv;
    inv.n_qubits = circuit.n_qubits;
    inv.params = circuit.params;
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        Gate g = *it;
        if (g.parametrized()) g.angle = g.angle.scaled(-1.0);
        inv.gates.push_back(std::move(g));
    }
    return inv;
}

GateCircuit trotterize(const PauliSum& generator, const ParamExpr& angle, int steps) {
    if (steps < 1) throw ValidationError("trotterize: steps must be >= 1");
    PauliSum h = generator;
    h.canonicalize();
    if (!h.is_hermitian()) throw ValidationError("trotterize: generator is not Hermitian");
    GateCircuit circuit;
    circuit.n_qubits = h.max_qubit() + 1;
    ParamExpr slice = angle.scaled(1.0 / steps);
    for (int s = 0; s < steps; ++s)
        for (const auto& t : h.terms) {
            if (t.ops.empty())
                throw ValidationError("trotterize: generator has an identity term");
            PauliTerm real_term = t;
            real_term.coeff = cplx(t.coeff.real(), 0.0);
            circuit.append(Gate::pauli_exp(real_term, slice));
        }
    return circuit;
}

std::vector<Gate> lower_pauliexp(const Gate& g) {
    if (g.kind != GateKind::PauliExp) throw ValidationError("lower_pauliexp: not a PauliExp gate");
    const double half_pi = std::numbers::pi / 2.0;
    std::vector<Gate> pre, post;
    std::vector<int> qs;
    for (const auto& [q, op] : g.term.ops) {
        qs.push_back(q);
        // Map each factor to Z: C P C^dag = Z with C = RotY(-pi/2) for X,
        // C = RotX(pi/2) for Y.
        if (op == PauliOp::X) {
            pre.push_back(Gate::rot(Axis::Y, q, ParamExpr::constant(-half_pi)));
            post.push_back(Gate::rot(Axis::Y, q, ParamExpr::constant(half_pi)));
        } else if (op == PauliOp::Y) {
            pre.push_back(Gate::rot(Axis::X, q, ParamExpr::constant(half_pi)));
            post.push_back(Gate::rot(Axis::X, q, ParamExpr::constant(-half_pi)));
        }
    }
    std::vector<Gate> out = pre;
    for (size_t k = 0; k + 1 < qs.size(); ++k) out.push_back(Gate::cnot(qs[k], qs[k + 1]));
    out.push_back(Gate::rot(Axis::Z, qs.back(), g.angle.scaled(2.0 * g.term.coeff.real())));
    for (size_t k = qs.size() - 1; k > 0; --k) out.push_back(Gate::cnot(qs[k - 1], qs[k]));
    out.insert(out.end(), post.begin(), post.end());
    return out;
}

GateCircuit lower_all_pauliexp(const GateCircuit& circuit) {
    GateCircuit low;
    low.n_qubits = circuit.n_qubits;
    low.params = circuit.params;
    for (const auto& g : circuit.gates) {
        if (g.kind == GateKind::PauliExp)
            for (const auto& lg : lower_pauliexp(g)) low.append(lg);
        else
            low.append(g);
    }
    low.n_qubits = std::max(low.n_qubits, circuit.n_qubits);
    return low;
}

static std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

static std::string fmt_expr(const ParamExpr& e) {
    if (e.is_constant()) return fmt_num(e.offset);
    std::string s;
    if (e.coeff == 1.0)
        s = e.name;
    else if (e.coeff == -1.0)
        s = "-" + e.name;
    else
        s = fmt_num(e.coeff) + "*" + e.name;
    if (e.offset != 0.0) {
        if (e.offset > 0) s += "+";
        s += fmt_num(e.offset);
    }
    return s;
}

std::string dump(const Gate& g) {
    std::ostringstream out;
    switch (g.kind) {
        case GateKind::X: out << "x " << g.q0; break;
        case GateKind::PhaseS: out << "phases " << g.q0 << ' ' << fmt_expr(g.angle); break;
        case GateKind::RotX: out << "rotx " << g.q0 << ' ' << fmt_expr(g.angle); break;
        case GateKind::RotY: out << "roty " << g.q0 << ' ' << fmt_expr(g.angle); break;
        case GateKind::RotZ: out << "rotz " << g.q0 << ' ' << fmt_expr(g.angle); break;
        case GateKind::Swap: out << "swap " << g.q0 << ' ' << g.q1; break;
        case GateKind::CNOT: out << "cnot " << g.q0 << ' ' << g.q1; break;
        case GateKind::ControlledRot: {
            const char* ax = g.axis == Axis::X   ? "crotx"
                             : g.axis == Axis::Y ? "croty"
                             : g.axis == Axis::Z ? "crotz"
                                                 : "crots";
            out << ax << ' ';
            for (size_t i = 0; i < g.controls.size(); ++i)
                out << (i ? "," : "") << g.controls[i];
            out << ' ' << g.q0 << ' ' << fmt_expr(g.angle);
            break;
        }
        case GateKind::PauliExp: {
            out << "pauliexp ";
            for (const auto& [q, op] : g.term.ops) out << pauli_char(op) << q;
            out << ' ' << fmt_num(g.term.coeff.real()) << ' ' << fmt_expr(g.angle);
            break;
        }
    }
    return out.str();
}

std::string dump(const GateCircuit& circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.n_qubits << '\n';
    for (const auto& g : circuit.gates) out << dump(g) << '\n';
    return out.str();
}

} // namespace photonq

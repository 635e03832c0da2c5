#include "photonq/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace photonq {

std::optional<ShiftRule> shift_rule(const Gate& gate) {
    if (!gate.parametrized() || gate.angle.is_constant()) return std::nullopt;
    const double pi = std::numbers::pi;
    switch (gate.kind) {
    case GateKind::PhaseS:
    case GateKind::RotX:
    case GateKind::RotY:
    case GateKind::RotZ:
        return ShiftRule{0.5, pi / 2};
    case GateKind::PauliExp: {
        double r = std::abs(gate.term.coeff.real());
        if (r < 1e-14) return std::nullopt;  // zero-weight term, angle has no effect
        return ShiftRule{r, pi / (4 * r)};
    }
    default:
        throw DifferentiationError("gate is not shift-eligible after lowering: " + dump(gate));
    }
}

// crz(a) = rz(a/2) t; cnot; rz(-a/2) t; cnot  (and the same shape for cry).
static void lower_controlled(std::vector<Gate>& out, const Gate& g) {
    if (g.controls.size() != 1)
        throw DifferentiationError("cannot lower a multi-controlled rotation: " + dump(g));
    int c = g.controls[0], t = g.q0;
    const double half_pi = std::numbers::pi / 2;
    switch (g.axis) {
    case Axis::Y:
        out.push_back(Gate::rot(Axis::Y, t, g.angle.scaled(0.5)));
        out.push_back(Gate::cnot(c, t));
        out.push_back(Gate::rot(Axis::Y, t, g.angle.scaled(-0.5)));
        out.push_back(Gate::cnot(c, t));
        return;
    case Axis::Z:
        out.push_back(Gate::rot(Axis::Z, t, g.angle.scaled(0.5)));
        out.push_back(Gate::cnot(c, t));
        out.push_back(Gate::rot(Axis::Z, t, g.angle.scaled(-0.5)));
        out.push_back(Gate::cnot(c, t));
        return;
    case Axis::X:
        out.push_back(Gate::rot(Axis::Y, t, ParamExpr::constant(-half_pi)));
        out.push_back(Gate::rot(Axis::Z, t, g.angle.scaled(0.5)));
        out.push_back(Gate::cnot(c, t));
        out.push_back(Gate::rot(Axis::Z, t, g.angle.scaled(-0.5)));
        out.push_back(Gate::cnot(c, t));
        out.push_back(Gate::rot(Axis::Y, t, ParamExpr::constant(half_pi)));
        return;
    case Axis::S:
        out.push_back(Gate::phase_s(c, g.angle.scaled(0.5)));
        out.push_back(Gate::phase_s(t, g.angle.scaled(0.5)));
        out.push_back(Gate::cnot(c, t));
        out.push_back(Gate::phase_s(t, g.angle.scaled(-0.5)));
        out.push_back(Gate::cnot(c, t));
        return;
    }
    throw DifferentiationError("unknown rotation axis");
}

GateCircuit lower_for_shifts(const GateCircuit& circuit) {
    GateCircuit low;
    low.n_qubits = circuit.n_qubits;
    low.params = circuit.params;
    std::vector<Gate> buf;
    for (const auto& g : circuit.gates) {
        if (g.kind == GateKind::ControlledRot && !g.angle.is_constant()) {
            buf.clear();
            lower_controlled(buf, g);
            for (const auto& lg : buf) low.append(lg);
        } else {
            low.append(g);
        }
    }
    low.n_qubits = std::max(low.n_qubits, circuit.n_qubits);
    return low;
}

std::vector<double> gradient(const Objective& obj, const ParamMap& params) {
    std::size_t np = obj.parameters.size();
    std::vector<double> grad(np, 0.0);
    if (np == 0) return grad;
    EvalResult base = evaluate(obj, params);
    if (obj.is_ratio() && base.degenerate) return grad;  // flat-zero contract

    // One evaluation job per distinct circuit; the shipped builders share one
    // circuit between numerator and denominator, giving a single job.
    struct Job {
        GateCircuit lowered;
        std::vector<Observable> observables;
        std::vector<int> roles;  // 0 numerator, 1 denominator
    };
    std::vector<Job> jobs;
    jobs.push_back({lower_for_shifts(*obj.numerator.circuit), {obj.numerator.observable}, {0}});
    if (obj.is_ratio()) {
        if (obj.denominator->circuit == obj.numerator.circuit) {
            jobs[0].observables.push_back(obj.denominator->observable);
            jobs[0].roles.push_back(1);
        } else {
            jobs.push_back({lower_for_shifts(*obj.denominator->circuit),
                            {obj.denominator->observable},
                            {1}});
        }
    }

    std::vector<double> dnum(np, 0.0), dden(np, 0.0);
    for (const auto& job : jobs) {
        for (std::size_t i = 0; i < job.lowered.gates.size(); ++i) {
            const Gate& g = job.lowered.gates[i];
            auto rule = shift_rule(g);
            if (!rule) continue;
            double c = g.angle.coeff;
            if (c == 0.0) continue;
            auto pit = std::find(obj.parameters.begin(), obj.parameters.end(), g.angle.name);
            if (pit == obj.parameters.end()) continue;  // bound symbol, not optimized
            std::size_t pi = std::size_t(pit - obj.parameters.begin());
            auto plus = eval_observables(job.lowered, job.observables, params, int(i),
                                         rule->shift);
            auto minus = eval_observables(job.lowered, job.observables, params, int(i),
                                          -rule->shift);
            for (std::size_t k = 0; k < job.roles.size(); ++k) {
                double d = c * rule->r * (plus[k] - minus[k]);
                (job.roles[k] == 0 ? dnum : dden)[pi] += d;
            }
        }
    }

    if (!obj.is_ratio()) return dnum;
    double den = base.denominator, num = base.value * base.denominator;
    for (std::size_t i = 0; i < np; ++i)
        grad[i] = (dnum[i] * den - num * dden[i]) / (den * den);
    return grad;
}

std::vector<double> finite_difference(const Objective& obj, const ParamMap& params, double h) {
    if (h <= 0) throw ConfigError("finite-difference step must be positive");
    std::vector<double> grad;
    grad.reserve(obj.parameters.size());
    for (const auto& name : obj.parameters) {
        ParamMap p = params;
        auto it = p.find(name);
        if (it == p.end()) throw BindingError("missing value for parameter '" + name + "'");
        double v = it->second;
        it->second = v + h;
        double fp = evaluate(obj, p).value;
        it->second = v - h;
        double fm = evaluate(obj, p).value;
        grad.push_back((fp - fm) / (2 * h));
    }
    return grad;
}

} // namespace photonq

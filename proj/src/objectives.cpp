#include "photonq/objectives.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace photonq {

ParamMap Objective::to_params(const std::vector<double>& x) const {
    if (x.size() != parameters.size())
        throw BindingError("parameter vector has the wrong length");
    ParamMap m;
    for (std::size_t i = 0; i < parameters.size(); ++i) m[parameters[i]] = x[i];
    return m;
}

std::vector<double> Objective::to_vector(const ParamMap& params) const {
    std::vector<double> x;
    x.reserve(parameters.size());
    for (const auto& name : parameters) {
        auto it = params.find(name);
        if (it == params.end()) throw BindingError("missing value for parameter '" + name + "'");
        x.push_back(it->second);
    }
    return x;
}

double eval_observable(const StateVector& state, const Observable& obs) {
    if (const auto* sum = std::get_if<PauliSum>(&obs)) return expectation(state, *sum);
    return zero_probability(state, std::get<ZeroProjector>(obs).qubits);
}

std::vector<double> eval_observables(const GateCircuit& circuit,
                                     const std::vector<Observable>& observables,
                                     const ParamMap& params, int shift_gate, double shift_delta) {
    StateVector st = run(circuit, params, shift_gate, shift_delta);
    std::vector<double> values;
    values.reserve(observables.size());
    for (const auto& obs : observables) values.push_back(eval_observable(st, obs));
    return values;
}

EvalResult evaluate(const Objective& objective, const ParamMap& params) {
    if (!objective.is_ratio()) {
        double v = eval_observables(*objective.numerator.circuit, {objective.numerator.observable},
                                    params)[0];
        return {v, 1.0, false};
    }
    double num, den;
    if (objective.numerator.circuit == objective.denominator->circuit) {
        auto v = eval_observables(
            *objective.numerator.circuit,
            {objective.numerator.observable, objective.denominator->observable}, params);
        num = v[0];
        den = v[1];
    } else {
        num = eval_observables(*objective.numerator.circuit, {objective.numerator.observable},
                               params)[0];
        den = eval_observables(*objective.denominator->circuit,
                               {objective.denominator->observable}, params)[0];
    }
    if (den < 1e-10) return {0.0, den, true};
    return {num / den, den, false};
}

// ---------------------------------------------------------------------------
// Disentangler synthesis: sequential two-level merges on the sparse encoded
// target. Every appended gate is mirrored onto the sparse amplitude map, so
// the loop always sees the current state.

namespace {

struct SparseSynth {
    int n;
    GateCircuit circuit;
    std::map<std::uint64_t, cplx> amps;

    std::uint64_t bit(int q) const { return std::uint64_t(1) << (n - 1 - q); }
    int qubit_of(int bitpos) const { return n - 1 - bitpos; }

    void apply_x(int q) {
        circuit.append(Gate::x(q));
        std::map<std::uint64_t, cplx> next;
        for (const auto& [i, a] : amps) next[i ^ bit(q)] = a;
        amps = std::move(next);
    }
    void apply_cnot(int c, int t) {
        circuit.append(Gate::cnot(c, t));
        std::map<std::uint64_t, cplx> next;
        for (const auto& [i, a] : amps) next[(i & bit(c)) ? (i ^ bit(t)) : i] = a;
        amps = std::move(next);
    }
};

} // namespace

GateCircuit target_disentangler(const SetupLayout& layout, const FockVector& target) {
    if (std::abs(target.norm() - 1.0) > 1e-9)
        throw ValidationError("target state must be normalized");
    SparseSynth s;
    s.n = layout.total_qubits;
    s.circuit.n_qubits = s.n;
    for (const auto& [state, amp] : target.amps) {
        if (std::abs(amp) < 1e-14) continue;
        s.amps[fock_index(state, layout)] = amp;  // validates the cutoff
    }
    if (s.amps.empty()) throw ValidationError("target state must be normalized");

    while (s.amps.size() > 1) {
        // Merge the two largest-index components into the smaller one.
        auto it = s.amps.rbegin();
        std::uint64_t hi = it->first;
        ++it;
        std::uint64_t lo = it->first;
        std::uint64_t diff = hi ^ lo;
        int pivot_pos = std::bit_width(diff) - 1;  // hi has this bit set, lo has not
        std::uint64_t pmask = std::uint64_t(1) << pivot_pos;
        int pq = s.qubit_of(pivot_pos);
        // Collapse the remaining differing bits with pivot-controlled CNOTs;
        // this relocates hi to lo | pmask (a permutation, so no collisions).
        for (int pos = 0; pos < 64; ++pos)
            if ((diff & ~pmask) >> pos & 1) s.apply_cnot(pq, s.qubit_of(pos));
        // Open the zero-valued controls of lo's pattern.
        std::vector<int> controls, opened;
        for (int q = 0; q < s.n; ++q) {
            if (q == pq) continue;
            controls.push_back(q);
            if (!(lo & s.bit(q))) opened.push_back(q);
        }
        for (int q : opened) s.apply_x(q);
        std::uint64_t lo2 = lo, hi2 = lo | pmask;
        for (int q : opened) {
            lo2 ^= s.bit(q);
            hi2 ^= s.bit(q);
        }
        cplx a0 = s.amps.at(lo2), a1 = s.amps.at(hi2);
        // Align the pair's phases, then rotate the upper amplitude away. Both
        // gates are controlled on every other qubit, so only this pair moves.
        double lambda = std::arg(a0) - std::arg(a1);
        double gamma = std::atan2(std::abs(a1), std::abs(a0));
        auto controlled = [&](Axis ax, double angle) {
            if (controls.empty())
                s.circuit.append(Gate::rot(ax, pq, ParamExpr::constant(angle)));
            else
                s.circuit.append(
                    Gate::controlled_rot(controls, pq, ax, ParamExpr::constant(angle)));
        };
        controlled(Axis::S, lambda);
        a1 *= std::exp(cplx(0, lambda));
        controlled(Axis::Y, -2.0 * gamma);
        double c = std::cos(gamma), sn = std::sin(gamma);
        s.amps[lo2] = c * a0 + sn * a1;
        s.amps.erase(hi2);
        for (int q : opened) s.apply_x(q);
    }
    std::uint64_t rest = s.amps.begin()->first;
    for (int q = 0; q < s.n; ++q)
        if (rest & s.bit(q)) s.apply_x(q);

    // Numerical check that the circuit really disentangles the target.
    StateVector st = zero_state(s.n);
    st.amps[0] = cplx(0, 0);
    for (const auto& [state, amp] : target.amps) st.amps[fock_index(state, layout)] = amp;
    for (const auto& g : s.circuit.gates) apply_gate(st, g, {});
    if (std::norm(st.amps[0]) < 1.0 - 1e-10)
        throw ValidationError("disentangler synthesis failed its numerical check");
    return s.circuit;
}

GateCircuit herald_trigger_circuit(const SetupLayout& layout, const HeraldSpec& herald) {
    if (layout.cutoff != 1)
        throw UnsupportedError("trigger heralding needs a one-qubit-per-mode layout");
    if (layout.n_modes() != 3) throw UnsupportedError("trigger heralding needs three modes");
    std::vector<int> qs = layout.path_qubits(herald.path);
    return inverse(qutrit_prep_circuit(qs, herald.alpha, herald.beta));
}

std::pair<GateCircuit, std::vector<int>> postselect_encoding(
    const SetupLayout& layout, const std::vector<std::string>& paths) {
    if (layout.cutoff != 1)
        throw UnsupportedError(
            "parity post-selection needs cutoff 1; the doubled-register scheme is out of scope");
    if (paths.empty()) throw ConfigError("post-selection needs at least one path");
    GateCircuit c;
    c.n_qubits = layout.total_qubits + int(paths.size());
    std::vector<int> ancillas;
    int anc = layout.total_qubits;
    for (const auto& p : paths) {
        if (std::count(paths.begin(), paths.end(), p) != 1)
            throw ConfigError("duplicate post-selection path '" + p + "'");
        c.append(Gate::x(anc));
        for (int q : layout.path_qubits(p)) c.append(Gate::cnot(q, anc));
        ancillas.push_back(anc);
        ++anc;
    }
    return {std::move(c), std::move(ancillas)};
}

static std::vector<std::string> sorted_free_parameters(const GateCircuit& c) {
    auto names = c.free_parameters();
    return {names.begin(), names.end()};
}

Objective build_post_selected_fidelity(const SetupLayout& layout, const GateCircuit& setup,
                                       const FockVector& target, const HeraldSpec& herald,
                                       const std::vector<std::string>& postselect_paths) {
    layout.path_index(herald.path);
    for (const auto& p : postselect_paths)
        if (p == herald.path) throw ConfigError("the trigger path cannot be post-selected");
    for (const auto& [state, amp] : target.amps)
        for (int p = 0; p < layout.n_paths(); ++p) {
            if (std::count(postselect_paths.begin(), postselect_paths.end(), layout.paths[p]))
                continue;
            for (int m = 0; m < layout.n_modes(); ++m)
                if (state.occ[layout.slot(p, m)] != 0)
                    throw ValidationError("target occupies a path outside the post-selection");
        }

    auto [enc, ancillas] = postselect_encoding(layout, postselect_paths);
    auto circuit = std::make_shared<GateCircuit>();
    circuit->n_qubits = layout.total_qubits;
    circuit->append(setup);
    circuit->append(herald_trigger_circuit(layout, herald));
    circuit->append(enc);
    circuit->append(target_disentangler(layout, target));

    std::vector<int> all(circuit->n_qubits);
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> herald_qubits = layout.path_qubits(herald.path);
    herald_qubits.insert(herald_qubits.end(), ancillas.begin(), ancillas.end());

    Objective obj;
    obj.numerator = {circuit, ZeroProjector{std::move(all)}};
    obj.denominator = ObjectiveLeaf{circuit, ZeroProjector{std::move(herald_qubits)}};
    obj.parameters = sorted_free_parameters(*circuit);
    return obj;
}

Objective build_plain_fidelity(const SetupLayout& layout, const GateCircuit& setup,
                               const FockVector& target) {
    auto circuit = std::make_shared<GateCircuit>();
    circuit->n_qubits = layout.total_qubits;
    circuit->append(setup);
    circuit->append(target_disentangler(layout, target));
    std::vector<int> all(circuit->n_qubits);
    std::iota(all.begin(), all.end(), 0);
    Objective obj;
    obj.numerator = {circuit, ZeroProjector{std::move(all)}};
    obj.parameters = sorted_free_parameters(*circuit);
    return obj;
}

} // namespace photonq

#include "photonq/elements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace photonq {

static void check_unit_psi(const cplx& psi) {
    if (std::abs(std::abs(psi) - 1.0) > 1e-9)
        throw ConfigError("beam splitter psi must have unit modulus");
}

// Per-mode generator psi a+_a a_b + psi* a+_b a_a on the two mode registers.
static PauliSum bs_mode_generator(const SetupLayout& layout, const std::string& pa,
                                  const std::string& pb, int mode, const cplx& psi) {
    PauliSum cross = creation_operator(layout, pa, mode) * annihilation_operator(layout, pb, mode);
    return psi * cross + adjoint(psi * cross);
}

GateCircuit compile_beam_splitter(const SetupLayout& layout, const BeamSplitter& bs, int steps) {
    if (bs.path_a == bs.path_b) throw ConfigError("beam splitter needs two distinct paths");
    check_unit_psi(bs.psi);
    layout.path_index(bs.path_a);
    layout.path_index(bs.path_b);
    if (steps < 1) throw ConfigError("beam splitter steps must be >= 1");

    GateCircuit circuit;
    circuit.n_qubits = layout.total_qubits;
    // exp(i theta H) = exp(-i (-theta) H)
    ParamExpr minus_theta = bs.theta.scaled(-1.0);
    for (int mode : layout.modes) {
        if (layout.cutoff == 1) {
            // Compact exact form. With psi = e^{i delta},
            // H = P_a(delta) (XX + YY)/2 P_a(-delta) on the two mode qubits,
            // and the XX, YY exponentials commute.
            int qa = layout.mode_qubits(bs.path_a, mode)[0];
            int qb = layout.mode_qubits(bs.path_b, mode)[0];
            double delta = std::arg(bs.psi);
            if (delta != 0.0)
                circuit.append(Gate::phase_s(qa, ParamExpr::constant(-delta)));
            PauliTerm xx{cplx(0.5, 0), {{qa, PauliOp::X}, {qb, PauliOp::X}}};
            PauliTerm yy{cplx(0.5, 0), {{qa, PauliOp::Y}, {qb, PauliOp::Y}}};
            circuit.append(Gate::pauli_exp(xx, minus_theta));
            circuit.append(Gate::pauli_exp(yy, minus_theta));
            if (delta != 0.0)
                circuit.append(Gate::phase_s(qa, ParamExpr::constant(delta)));
        } else {
            PauliSum h = bs_mode_generator(layout, bs.path_a, bs.path_b, mode, bs.psi);
            circuit.append(trotterize(h, minus_theta, steps));
        }
    }
    circuit.n_qubits = layout.total_qubits;
    return circuit;
}

// One exact phase shifter on a single mode register.
static void append_mode_phase(GateCircuit& circuit, const SetupLayout& layout,
                              const std::string& path, int mode, const ParamExpr& phi) {
    auto qs = layout.mode_qubits(path, mode);
    int b = layout.qubits_per_mode;
    for (int k = 0; k < b; ++k) {
        double weight = static_cast<double>(1 << (b - 1 - k));
        circuit.append(Gate::phase_s(qs[k], phi.scaled(weight)));
    }
}

GateCircuit compile_phase_shifter(const SetupLayout& layout, const PhaseShifter& ps) {
    GateCircuit circuit;
    circuit.n_qubits = layout.total_qubits;
    if (ps.mode) {
        append_mode_phase(circuit, layout, ps.path, *ps.mode, ps.phi);
    } else {
        layout.path_index(ps.path);
        for (int mode : layout.modes) append_mode_phase(circuit, layout, ps.path, mode, ps.phi);
    }
    return circuit;
}

GateCircuit compile_dove_prism(const SetupLayout& layout, const DovePrism& dp) {
    layout.path_index(dp.path);
    GateCircuit circuit;
    circuit.n_qubits = layout.total_qubits;
    for (int mode : layout.modes) {
        if (mode == 0) continue;  // P(0) is the identity
        append_mode_phase(circuit, layout, dp.path, mode, dp.phi.scaled(mode));
    }
    return circuit;
}

GateCircuit compile_photonic_swap(const SetupLayout& layout, const PhotonicSwap& sw) {
    auto qs1 = layout.mode_qubits(sw.path_1, sw.mode_1);
    auto qs2 = layout.mode_qubits(sw.path_2, sw.mode_2);
    GateCircuit circuit;
    circuit.n_qubits = layout.total_qubits;
    if (qs1 == qs2) return circuit;  // swapping a register with itself
    for (size_t k = 0; k < qs1.size(); ++k) circuit.append(Gate::swap_gate(qs1[k], qs2[k]));
    return circuit;
}

GateCircuit compile_mirror(const SetupLayout& layout, const Mirror& m) {
    layout.path_index(m.path);
    GateCircuit circuit;
    circuit.n_qubits = layout.total_qubits;
    for (int mode : layout.modes) {
        if (mode <= 0) continue;
        bool has_negative = std::count(layout.modes.begin(), layout.modes.end(), -mode) > 0;
        if (!has_negative)
            throw ConfigError("mirror needs the mode list to be symmetric around 0");
        circuit.append(compile_photonic_swap(layout, {m.path, mode, m.path, -mode}));
    }
    return circuit;
}

GateCircuit compile_hologram(const SetupLayout& layout, const Hologram& h) {
    layout.path_index(h.path);
    GateCircuit circuit;
    circuit.n_qubits = layout.total_qubits;
    int k = layout.n_modes();
    // Adjacent swaps, top first: after swap(m_{K-1}, m_{K-2}), ..., swap(m_1, m_0)
    // the register content of mode position j has moved to position j+1 and the
    // top one has wrapped to the bottom.
    for (int j = k - 1; j >= 1; --j)
        circuit.append(
            compile_photonic_swap(layout, {h.path, layout.modes[j], h.path, layout.modes[j - 1]}));
    return circuit;
}

GateCircuit compile_pair_source(const SetupLayout& layout, const PairSource& src, int steps) {
    if (src.path_a == src.path_b && src.mode_a == src.mode_b)
        throw ConfigError("pair source needs two distinct (path, mode) targets");
    if (steps < 1) throw ConfigError("pair source steps must be >= 1");
    PauliSum t = cplx(0, 1) * (creation_operator(layout, src.path_a, src.mode_a) *
                               creation_operator(layout, src.path_b, src.mode_b));
    PauliSum h = t + adjoint(t);  // i(a+b+ - ab), Hermitian
    GateCircuit circuit = trotterize(h, src.omega.scaled(0.5), steps);
    circuit.n_qubits = layout.total_qubits;
    return circuit;
}

GateCircuit compile_photon_inject(const SetupLayout& layout, const PhotonInject& inj) {
    if (inj.count < 0 || inj.count > layout.cutoff)
        throw EncodingError("injected photon count exceeds cutoff");
    auto qs = layout.mode_qubits(inj.path, inj.mode);
    GateCircuit circuit;
    circuit.n_qubits = layout.total_qubits;
    int b = layout.qubits_per_mode;
    for (int k = 0; k < b; ++k)
        if (inj.count >> (b - 1 - k) & 1) circuit.append(Gate::x(qs[k]));
    return circuit;
}

GateCircuit compile_setup(const SetupLayout& layout, const std::vector<OpticalElement>& elements,
                          int steps, std::vector<std::string>* warnings) {
    GateCircuit circuit;
    circuit.n_qubits = layout.total_qubits;
    if (warnings) {
        for (const auto& el : elements) {
            const auto* holo = std::get_if<Hologram>(&el);
            if (!holo) continue;
            int top_mode = layout.modes.back();
            bool top_reachable = false;
            for (const auto& other : elements) {
                if (const auto* inj = std::get_if<PhotonInject>(&other))
                    top_reachable |= inj->path == holo->path && inj->mode == top_mode &&
                                     inj->count > 0;
                if (const auto* ps = std::get_if<PairSource>(&other))
                    top_reachable |= (ps->path_a == holo->path && ps->mode_a == top_mode) ||
                                     (ps->path_b == holo->path && ps->mode_b == top_mode);
            }
            if (top_reachable)
                warnings->push_back("hologram on path '" + holo->path +
                                    "': the top mode can be populated, its content wraps "
                                    "cyclically to the bottom mode");
        }
    }
    for (const auto& el : elements) {
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, BeamSplitter>)
                    circuit.append(compile_beam_splitter(layout, e, steps));
                else if constexpr (std::is_same_v<T, PhaseShifter>)
                    circuit.append(compile_phase_shifter(layout, e));
                else if constexpr (std::is_same_v<T, DovePrism>)
                    circuit.append(compile_dove_prism(layout, e));
                else if constexpr (std::is_same_v<T, PhotonicSwap>)
                    circuit.append(compile_photonic_swap(layout, e));
                else if constexpr (std::is_same_v<T, Mirror>)
                    circuit.append(compile_mirror(layout, e));
                else if constexpr (std::is_same_v<T, Hologram>)
                    circuit.append(compile_hologram(layout, e));
                else if constexpr (std::is_same_v<T, PairSource>)
                    circuit.append(compile_pair_source(layout, e, steps));
                else if constexpr (std::is_same_v<T, PhotonInject>)
                    circuit.append(compile_photon_inject(layout, e));
            },
            el);
    }
    return circuit;
}

GateCircuit qutrit_prep_circuit(const std::vector<int>& qubits, const ParamExpr& alpha,
                                const ParamExpr& beta) {
    if (qubits.size() != 3) throw ConfigError("qutrit preparation needs exactly three qubits");
    int q1 = qubits[0], q2 = qubits[1], q3 = qubits[2];
    GateCircuit circuit;
    circuit.append(Gate::x(q1));
    circuit.append(Gate::controlled_rot({q1}, q2, Axis::Y, alpha.scaled(2.0)));
    circuit.append(Gate::cnot(q2, q1));
    circuit.append(Gate::controlled_rot({q2}, q3, Axis::Y, beta.scaled(2.0)));
    circuit.append(Gate::cnot(q3, q2));
    return circuit;
}

GateCircuit bell3_prep_circuit(const SetupLayout& layout, const std::string& path_1,
                               const std::string& path_2, bool anti) {
    if (layout.cutoff != 1 || layout.n_modes() != 3)
        throw UnsupportedError("bell3 preparation needs cutoff 1 and exactly three modes");
    if (path_1 == path_2) throw ConfigError("bell3 needs two distinct paths");
    auto q1 = layout.path_qubits(path_1);
    auto q2 = layout.path_qubits(path_2);
    // Uniform qutrit on path_1: alpha = acos(1/sqrt(3)), beta = pi/4.
    GateCircuit circuit = qutrit_prep_circuit(
        q1, ParamExpr::constant(std::acos(1.0 / std::sqrt(3.0))),
        ParamExpr::constant(std::numbers::pi / 4.0));
    // Copy the one-hot mode register onto the partner path.
    for (int m = 0; m < 3; ++m) {
        int partner = anti ? layout.mode_index(-layout.modes[m]) : m;
        circuit.append(Gate::cnot(q1[m], q2[partner]));
    }
    circuit.n_qubits = layout.total_qubits;
    return circuit;
}

} // namespace photonq

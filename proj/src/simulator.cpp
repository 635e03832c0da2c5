#include "photonq/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>

namespace photonq {

double StateVector::norm() const {
    double n2 = 0;
    for (const cplx& a : amps) n2 += std::norm(a);
    return std::sqrt(n2);
}

int max_simulated_qubits() {
    if (const char* env = std::getenv("PHOTONQ_MAX_QUBITS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 24;
}

StateVector zero_state(int n_qubits) {
    if (n_qubits < 0) throw ConfigError("qubit count must be nonnegative");
    if (n_qubits > max_simulated_qubits())
        throw ResourceError("circuit needs " + std::to_string(n_qubits) +
                            " qubits, limit is " + std::to_string(max_simulated_qubits()) +
                            " (set PHOTONQ_MAX_QUBITS to raise)");
    StateVector s;
    s.n_qubits = n_qubits;
    s.amps.assign(std::uint64_t(1) << n_qubits, cplx(0, 0));
    s.amps[0] = cplx(1, 0);
    return s;
}

static inline std::uint64_t bit_of(int n_qubits, int q) {
    return std::uint64_t(1) << (n_qubits - 1 - q);
}

static void apply_1q(StateVector& st, int q, cplx u00, cplx u01, cplx u10, cplx u11) {
    std::uint64_t mask = bit_of(st.n_qubits, q);
    std::uint64_t dim = st.amps.size();
    for (std::uint64_t base = 0; base < dim; base += mask << 1)
        for (std::uint64_t i = base; i < base + mask; ++i) {
            cplx a = st.amps[i], b = st.amps[i | mask];
            st.amps[i] = u00 * a + u01 * b;
            st.amps[i | mask] = u10 * a + u11 * b;
        }
}

static void apply_diag_1q(StateVector& st, int q, cplx p0, cplx p1) {
    std::uint64_t mask = bit_of(st.n_qubits, q);
    std::uint64_t dim = st.amps.size();
    for (std::uint64_t i = 0; i < dim; ++i) st.amps[i] *= (i & mask) ? p1 : p0;
}

static void rotation_matrix(Axis axis, double angle, cplx u[4]) {
    double c = std::cos(angle / 2), s = std::sin(angle / 2);
    switch (axis) {
    case Axis::X:
        u[0] = c; u[1] = cplx(0, -s); u[2] = cplx(0, -s); u[3] = c;
        break;
    case Axis::Y:
        u[0] = c; u[1] = -s; u[2] = s; u[3] = c;
        break;
    case Axis::Z:
        u[0] = std::exp(cplx(0, -angle / 2)); u[1] = 0; u[2] = 0;
        u[3] = std::exp(cplx(0, angle / 2));
        break;
    case Axis::S:
        u[0] = 1; u[1] = 0; u[2] = 0; u[3] = std::exp(cplx(0, angle));
        break;
    }
}

static void apply_pauli_exp(StateVector& st, const PauliTerm& term, double angle) {
    std::uint64_t xm = 0, ym = 0, zm = 0;
    for (const auto& [q, op] : term.ops) {
        std::uint64_t b = bit_of(st.n_qubits, q);
        if (op == PauliOp::X) xm |= b;
        else if (op == PauliOp::Y) ym |= b;
        else zm |= b;
    }
    double theta = angle * term.coeff.real();
    std::uint64_t flip = xm | ym;
    std::uint64_t dim = st.amps.size();
    if (flip == 0) {
        cplx even = std::exp(cplx(0, -theta)), odd = std::exp(cplx(0, theta));
        for (std::uint64_t i = 0; i < dim; ++i)
            st.amps[i] *= (std::popcount(i & zm) & 1) ? odd : even;
        return;
    }
    int ny = std::popcount(ym);
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx iny = ipow[ny & 3];
    std::uint64_t sign_mask = ym | zm;
    double c = std::cos(theta), s = std::sin(theta);
    cplx mis(0, -s);
    for (std::uint64_t i = 0; i < dim; ++i) {
        std::uint64_t j = i ^ flip;
        if (j < i) continue;
        // <j|P|i> and <i|P|j> pick up i^nY times the Y/Z sign of the source.
        cplx pi = iny * ((std::popcount(i & sign_mask) & 1) ? -1.0 : 1.0);
        cplx pj = iny * ((std::popcount(j & sign_mask) & 1) ? -1.0 : 1.0);
        cplx a = st.amps[i], b = st.amps[j];
        st.amps[i] = c * a + mis * pj * b;
        st.amps[j] = c * b + mis * pi * a;
    }
}

void apply_gate(StateVector& st, const Gate& gate, const ParamMap& params, double shift) {
    std::uint64_t dim = st.amps.size();
    switch (gate.kind) {
    case GateKind::X:
        apply_1q(st, gate.q0, 0, 1, 1, 0);
        return;
    case GateKind::PhaseS:
        apply_diag_1q(st, gate.q0, 1, std::exp(cplx(0, gate.angle.value(params) + shift)));
        return;
    case GateKind::RotX:
    case GateKind::RotY:
    case GateKind::RotZ: {
        Axis axis = gate.kind == GateKind::RotX   ? Axis::X
                    : gate.kind == GateKind::RotY ? Axis::Y
                                                  : Axis::Z;
        cplx u[4];
        rotation_matrix(axis, gate.angle.value(params) + shift, u);
        if (axis == Axis::Z) apply_diag_1q(st, gate.q0, u[0], u[3]);
        else apply_1q(st, gate.q0, u[0], u[1], u[2], u[3]);
        return;
    }
    case GateKind::ControlledRot: {
        std::uint64_t cmask = 0;
        for (int c : gate.controls) cmask |= bit_of(st.n_qubits, c);
        std::uint64_t tmask = bit_of(st.n_qubits, gate.q0);
        cplx u[4];
        rotation_matrix(gate.axis, gate.angle.value(params) + shift, u);
        if (gate.axis == Axis::S || gate.axis == Axis::Z) {
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & cmask) == cmask) st.amps[i] *= (i & tmask) ? u[3] : u[0];
        } else {
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & cmask) == cmask && !(i & tmask)) {
                    cplx a = st.amps[i], b = st.amps[i | tmask];
                    st.amps[i] = u[0] * a + u[1] * b;
                    st.amps[i | tmask] = u[2] * a + u[3] * b;
                }
        }
        return;
    }
    case GateKind::Swap: {
        std::uint64_t m0 = bit_of(st.n_qubits, gate.q0), m1 = bit_of(st.n_qubits, gate.q1);
        for (std::uint64_t i = 0; i < dim; ++i)
            if ((i & m0) && !(i & m1)) std::swap(st.amps[i], st.amps[i ^ m0 ^ m1]);
        return;
    }
    case GateKind::CNOT: {
        std::uint64_t cm = bit_of(st.n_qubits, gate.q0), tm = bit_of(st.n_qubits, gate.q1);
        for (std::uint64_t i = 0; i < dim; ++i)
            if ((i & cm) && !(i & tm)) std::swap(st.amps[i], st.amps[i | tm]);
        return;
    }
    case GateKind::PauliExp:
        apply_pauli_exp(st, gate.term, gate.angle.value(params) + shift);
        return;
    }
    throw ValidationError("unknown gate kind");
}

StateVector run(const GateCircuit& circuit, const ParamMap& params, int shift_gate,
                double shift_delta) {
    ParamMap effective = circuit.params;  // symbol-table values, overridden by the caller
    for (const auto& [k, v] : params) effective[k] = v;
    StateVector st = zero_state(circuit.n_qubits);
    for (std::size_t i = 0; i < circuit.gates.size(); ++i)
        apply_gate(st, circuit.gates[i], effective,
                   int(i) == shift_gate ? shift_delta : 0.0);
    return st;
}

double expectation(const StateVector& st, const PauliSum& sum) {
    PauliSum s = sum;
    s.canonicalize();
    if (!s.is_hermitian()) throw ValidationError("expectation needs a Hermitian operator");
    if (s.max_qubit() >= st.n_qubits)
        throw ValidationError("operator acts outside the simulated register");
    std::uint64_t dim = st.amps.size();
    cplx acc(0, 0);
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const PauliTerm& term : s.terms) {
        std::uint64_t xm = 0, ym = 0, zm = 0;
        for (const auto& [q, op] : term.ops) {
            std::uint64_t b = bit_of(st.n_qubits, q);
            if (op == PauliOp::X) xm |= b;
            else if (op == PauliOp::Y) ym |= b;
            else zm |= b;
        }
        std::uint64_t flip = xm | ym, sign_mask = ym | zm;
        cplx iny = ipow[std::popcount(ym) & 3];
        cplx tval(0, 0);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if (st.amps[i] == cplx(0, 0)) continue;
            cplx ph = iny * ((std::popcount(i & sign_mask) & 1) ? -1.0 : 1.0);
            tval += std::conj(st.amps[i ^ flip]) * ph * st.amps[i];
        }
        acc += term.coeff * tval;
    }
    if (std::abs(acc.imag()) > 1e-8)
        throw ValidationError("expectation of a Hermitian operator came out complex");
    return acc.real();
}

double all_zero_probability(const StateVector& st) { return std::norm(st.amps[0]); }

double zero_probability(const StateVector& st, const std::vector<int>& qubits) {
    std::uint64_t mask = 0;
    for (int q : qubits) {
        if (q < 0 || q >= st.n_qubits) throw LookupError("qubit index out of range");
        mask |= bit_of(st.n_qubits, q);
    }
    double p = 0;
    std::uint64_t dim = st.amps.size();
    for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & mask) == 0) p += std::norm(st.amps[i]);
    return p;
}

std::map<std::uint64_t, long> sample(const StateVector& st, long shots, std::uint64_t seed) {
    if (shots < 0) throw ConfigError("shot count must be nonnegative");
    std::vector<double> cum;
    std::vector<std::uint64_t> idx;
    double total = 0;
    for (std::uint64_t i = 0; i < st.amps.size(); ++i) {
        double p = std::norm(st.amps[i]);
        if (p <= 0) continue;
        total += p;
        cum.push_back(total);
        idx.push_back(i);
    }
    std::map<std::uint64_t, long> counts;
    if (cum.empty()) return counts;
    std::mt19937_64 gen(seed);
    for (long s = 0; s < shots; ++s) {
        double u = double(gen() >> 11) * 0x1.0p-53 * total;
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) --it;
        counts[idx[std::size_t(it - cum.begin())]]++;
    }
    return counts;
}

std::string index_bitstring(std::uint64_t index, int n_qubits) {
    std::string s(n_qubits, '0');
    for (int q = 0; q < n_qubits; ++q)
        if (index & (std::uint64_t(1) << (n_qubits - 1 - q))) s[q] = '1';
    return s;
}

std::optional<FockState> decode_index(std::uint64_t index, const SetupLayout& layout) {
    FockState f(layout.n_slots());
    int b = layout.qubits_per_mode, n = layout.total_qubits;
    for (int s = 0; s < layout.n_slots(); ++s) {
        int v = 0;
        for (int k = 0; k < b; ++k) {
            int q = s * b + k;
            v = (v << 1) | int((index >> (n - 1 - q)) & 1);
        }
        if (v > layout.cutoff) return std::nullopt;
        f.occ[s] = v;
    }
    return f;
}

std::uint64_t fock_index(const FockState& state, const SetupLayout& layout) {
    if (int(state.occ.size()) != layout.n_slots())
        throw EncodingError("occupation vector does not match the layout");
    std::uint64_t index = 0;
    int b = layout.qubits_per_mode, n = layout.total_qubits;
    for (int s = 0; s < layout.n_slots(); ++s) {
        int v = state.occ[s];
        if (v < 0 || v > layout.cutoff) throw EncodingError("occupation exceeds the cutoff");
        for (int k = 0; k < b; ++k) {
            int q = s * b + k;
            if ((v >> (b - 1 - k)) & 1) index |= std::uint64_t(1) << (n - 1 - q);
        }
    }
    return index;
}

double valid_state_fraction(const StateVector& st, const SetupLayout& layout,
                            int expected_photons) {
    if (layout.total_qubits != st.n_qubits)
        throw ConfigError("layout does not match the simulated register");
    double p = 0;
    for (std::uint64_t i = 0; i < st.amps.size(); ++i) {
        if (st.amps[i] == cplx(0, 0)) continue;
        auto fock = decode_index(i, layout);
        if (!fock) continue;
        int total = 0;
        for (int v : fock->occ) total += v;
        if (total == expected_photons) p += std::norm(st.amps[i]);
    }
    return p;
}

} // namespace photonq

#include "photonq/fock_oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>

namespace photonq {

double FockVector::norm() const {
    double n2 = 0;
    for (const auto& [state, amp] : amps) n2 += std::norm(amp);
    return std::sqrt(n2);
}

FockVector& FockVector::prune(double eps) {
    std::erase_if(amps, [&](const auto& kv) { return std::abs(kv.second) < eps; });
    return *this;
}

FockVector& FockVector::normalize() {
    double n = norm();
    if (n < 1e-14) throw ValidationError("cannot normalize a zero Fock vector");
    for (auto& [state, amp] : amps) amp /= n;
    return *this;
}

FockVector fock_vacuum(const SetupLayout& layout) {
    FockVector v{layout, {}};
    v.amps[vacuum(layout)] = cplx(1, 0);
    return v;
}

FockVector basis_vector(const SetupLayout& layout, const FockState& state) {
    FockVector v{layout, {}};
    v.amps[state] = cplx(1, 0);
    return v;
}

cplx overlap(const FockVector& a, const FockVector& b) {
    cplx s(0, 0);
    for (const auto& [state, amp] : a.amps) {
        auto it = b.amps.find(state);
        if (it != b.amps.end()) s += std::conj(amp) * it->second;
    }
    return s;
}

// Dense truncated creation operator on one register, <n'|a+|n> = sqrt(n+1).
static Eigen::MatrixXcd creation_matrix(int cutoff) {
    int d = cutoff + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n + 1 < d; ++n) m(n + 1, n) = std::sqrt(n + 1.0);
    return m;
}

static Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

// Applies a unitary acting on the joint space of two registers
// (basis |n_1, n_2> at index n_1 * (cutoff+1) + n_2).
static FockVector apply_two_slot_unitary(const FockVector& vec, int slot_1, int slot_2,
                                         const Eigen::MatrixXcd& u) {
    int d = vec.layout.cutoff + 1;
    FockVector out{vec.layout, {}};
    for (const auto& [state, amp] : vec.amps) {
        int col = state.occ[slot_1] * d + state.occ[slot_2];
        for (int row = 0; row < d * d; ++row) {
            cplx w = u(row, col);
            if (std::abs(w) < 1e-15) continue;
            FockState ns = state;
            ns.occ[slot_1] = row / d;
            ns.occ[slot_2] = row % d;
            out.amps[ns] += amp * w;
        }
    }
    return out.prune();
}

static FockVector apply_beam_splitter(const FockVector& vec, const BeamSplitter& bs,
                                      const ParamMap& params) {
    const SetupLayout& layout = vec.layout;
    if (bs.path_a == bs.path_b) throw ConfigError("beam splitter needs two distinct paths");
    if (std::abs(std::abs(bs.psi) - 1.0) > 1e-9)
        throw ConfigError("beam splitter psi must have unit modulus");
    double theta = bs.theta.value(params);
    Eigen::MatrixXcd ad = creation_matrix(layout.cutoff);
    Eigen::MatrixXcd a = ad.adjoint();
    Eigen::MatrixXcd cross = kron(ad, a);
    Eigen::MatrixXcd h = bs.psi * cross + std::conj(bs.psi) * Eigen::MatrixXcd(cross.adjoint());
    Eigen::MatrixXcd u = (cplx(0, 1) * theta * h).exp();
    FockVector out = vec;
    for (int mode : layout.modes)
        out = apply_two_slot_unitary(out, layout.slot_of(bs.path_a, mode),
                                     layout.slot_of(bs.path_b, mode), u);
    return out;
}

static FockVector apply_pair_source(const FockVector& vec, const PairSource& src,
                                    const ParamMap& params) {
    const SetupLayout& layout = vec.layout;
    int s1 = layout.slot_of(src.path_a, src.mode_a);
    int s2 = layout.slot_of(src.path_b, src.mode_b);
    if (s1 == s2) throw ConfigError("pair source needs two distinct (path, mode) targets");
    double omega = src.omega.value(params);
    Eigen::MatrixXcd ad = creation_matrix(layout.cutoff);
    Eigen::MatrixXcd a = ad.adjoint();
    Eigen::MatrixXcd h = cplx(0, 1) * (kron(ad, ad) - kron(a, a));
    Eigen::MatrixXcd u = (cplx(0, -0.5) * omega * h).exp();
    return apply_two_slot_unitary(vec, s1, s2, u);
}

FockVector apply_element_exact(const FockVector& vec, const OpticalElement& element,
                               const ParamMap& params) {
    const SetupLayout& layout = vec.layout;
    return std::visit(
        [&](const auto& e) -> FockVector {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, BeamSplitter>) {
                return apply_beam_splitter(vec, e, params);
            } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                double phi = e.phi.value(params);
                std::vector<int> slots;
                if (e.mode)
                    slots.push_back(layout.slot_of(e.path, *e.mode));
                else
                    for (int mode : layout.modes) slots.push_back(layout.slot_of(e.path, mode));
                FockVector out = vec;
                for (auto& [state, amp] : out.amps) {
                    int n = 0;
                    for (int s : slots) n += state.occ[s];
                    amp *= std::exp(cplx(0, n * phi));
                }
                return out;
            } else if constexpr (std::is_same_v<T, DovePrism>) {
                double phi = e.phi.value(params);
                int p = layout.path_index(e.path);
                FockVector out = vec;
                for (auto& [state, amp] : out.amps) {
                    double total = 0;
                    for (int m = 0; m < layout.n_modes(); ++m)
                        total += layout.modes[m] * state.occ[layout.slot(p, m)];
                    amp *= std::exp(cplx(0, total * phi));
                }
                return out;
            } else if constexpr (std::is_same_v<T, PhotonicSwap>) {
                int s1 = layout.slot_of(e.path_1, e.mode_1);
                int s2 = layout.slot_of(e.path_2, e.mode_2);
                FockVector out{layout, {}};
                for (const auto& [state, amp] : vec.amps) {
                    FockState ns = state;
                    std::swap(ns.occ[s1], ns.occ[s2]);
                    out.amps[ns] += amp;
                }
                return out;
            } else if constexpr (std::is_same_v<T, Mirror>) {
                int p = layout.path_index(e.path);
                FockVector out{layout, {}};
                for (const auto& [state, amp] : vec.amps) {
                    FockState ns = state;
                    for (int m = 0; m < layout.n_modes(); ++m) {
                        int flipped = layout.mode_index(-layout.modes[m]);
                        ns.occ[layout.slot(p, flipped)] = state.occ[layout.slot(p, m)];
                    }
                    out.amps[ns] += amp;
                }
                return out;
            } else if constexpr (std::is_same_v<T, Hologram>) {
                int p = layout.path_index(e.path);
                int k = layout.n_modes();
                FockVector out{layout, {}};
                for (const auto& [state, amp] : vec.amps) {
                    FockState ns = state;
                    for (int m = 0; m < k; ++m)
                        ns.occ[layout.slot(p, m)] = state.occ[layout.slot(p, (m + k - 1) % k)];
                    out.amps[ns] += amp;
                }
                return out;
            } else if constexpr (std::is_same_v<T, PairSource>) {
                return apply_pair_source(vec, e, params);
            } else if constexpr (std::is_same_v<T, PhotonInject>) {
                if (e.count < 0 || e.count > layout.cutoff)
                    throw EncodingError("injected photon count exceeds cutoff");
                int s = layout.slot_of(e.path, e.mode);
                FockVector out = vec;
                std::map<FockState, cplx> moved;
                for (const auto& [state, amp] : out.amps) {
                    if (state.occ[s] != 0)
                        throw EncodingError("photon injection into an occupied register");
                    FockState ns = state;
                    ns.occ[s] = e.count;
                    moved[ns] = amp;
                }
                out.amps = std::move(moved);
                return out;
            }
        },
        element);
}

FockVector apply_setup_exact(const FockVector& initial, const std::vector<OpticalElement>& elements,
                             const ParamMap& params) {
    FockVector v = initial;
    for (const auto& el : elements) v = apply_element_exact(v, el, params);
    return v;
}

std::map<FockState, double> exact_distribution(const FockVector& initial,
                                               const std::vector<OpticalElement>& elements,
                                               const ParamMap& params) {
    FockVector out = apply_setup_exact(initial, elements, params);
    std::map<FockState, double> dist;
    for (const auto& [state, amp] : out.amps) {
        double p = std::norm(amp);
        if (p > 1e-16) dist[state] += p;
    }
    return dist;
}

// Trigger amplitudes (t_1, t_2, t_3) over the path's modes in layout order.
static std::array<cplx, 3> trigger_amplitudes(const HeraldSpec& herald, const ParamMap& params) {
    double a = herald.alpha.value(params);
    double b = herald.beta.value(params);
    return {cplx(std::cos(a), 0), cplx(std::sin(a) * std::cos(b), 0),
            cplx(std::sin(a) * std::sin(b), 0)};
}

double exact_post_selected_fidelity(const FockVector& output, const FockVector& target,
                                    const HeraldSpec& herald,
                                    const std::vector<std::string>& postselect_paths,
                                    const ParamMap& params) {
    const SetupLayout& layout = output.layout;
    if (layout.n_modes() != 3)
        throw UnsupportedError("parametrized trigger needs a three-mode layout");
    int pt = layout.path_index(herald.path);
    std::vector<int> ps_idx;
    for (const auto& p : postselect_paths) ps_idx.push_back(layout.path_index(p));

    if (std::abs(target.norm() - 1.0) > 1e-9)
        throw ValidationError("target state must be normalized");
    // Target support must live on the post-selected paths only.
    std::map<FockState, cplx> target_by_sys;
    for (const auto& [state, amp] : target.amps) {
        for (int p = 0; p < layout.n_paths(); ++p) {
            bool selected = std::count(ps_idx.begin(), ps_idx.end(), p) > 0;
            if (selected) continue;
            for (int m = 0; m < layout.n_modes(); ++m)
                if (state.occ[layout.slot(p, m)] != 0)
                    throw ValidationError("target occupies a path outside the post-selection");
        }
        target_by_sys[state] = amp;
    }

    auto t = trigger_amplitudes(herald, params);

    // <t| contraction: group output components with one trigger photon by the
    // rest-of-register configuration.
    std::map<FockState, cplx> rest_amp;  // trigger slots zeroed
    for (const auto& [state, amp] : output.amps) {
        int n_trig = 0, mode = -1;
        for (int m = 0; m < layout.n_modes(); ++m) {
            int n = state.occ[layout.slot(pt, m)];
            n_trig += n;
            if (n == 1) mode = m;
        }
        if (n_trig != 1) continue;  // orthogonal to the one-photon trigger state
        FockState rest = state;
        for (int m = 0; m < layout.n_modes(); ++m) rest.occ[layout.slot(pt, m)] = 0;
        rest_amp[rest] += std::conj(t[mode]) * amp;
    }

    auto one_photon_per_selected_path = [&](const FockState& rest) {
        for (int p : ps_idx) {
            int n = 0;
            for (int m = 0; m < layout.n_modes(); ++m) n += rest.occ[layout.slot(p, m)];
            if (n != 1) return false;
        }
        return true;
    };

    double denom = 0;
    std::map<FockState, cplx> numer_by_other;  // keyed by non-selected, non-trigger content
    for (const auto& [rest, amp] : rest_amp) {
        if (!one_photon_per_selected_path(rest)) continue;
        denom += std::norm(amp);
        // Split rest into the system part (post-selected paths) and the rest.
        FockState sys = rest, other = rest;
        for (int p = 0; p < layout.n_paths(); ++p) {
            bool selected = std::count(ps_idx.begin(), ps_idx.end(), p) > 0;
            for (int m = 0; m < layout.n_modes(); ++m) {
                int s = layout.slot(p, m);
                if (selected)
                    other.occ[s] = 0;
                else
                    sys.occ[s] = 0;
            }
        }
        auto it = target_by_sys.find(sys);
        if (it != target_by_sys.end()) numer_by_other[other] += std::conj(it->second) * amp;
    }
    if (denom < 1e-12)
        throw DegenerateFidelityError("post-selection probability vanishes");
    double numer = 0;
    for (const auto& [other, amp] : numer_by_other) numer += std::norm(amp);
    return numer / denom;
}

FockVector bell3_fock_vector(const SetupLayout& layout, const std::string& path_1,
                             const std::string& path_2, bool anti) {
    if (layout.cutoff < 1 || layout.n_modes() != 3)
        throw UnsupportedError("bell3 needs exactly three modes");
    if (path_1 == path_2) throw ConfigError("bell3 needs two distinct paths");
    FockVector v{layout, {}};
    for (int m = 0; m < 3; ++m) {
        int partner = anti ? layout.mode_index(-layout.modes[m]) : m;
        FockState s = vacuum(layout);
        s.occ[layout.slot_of(path_1, layout.modes[m])] = 1;
        s.occ[layout.slot_of(path_2, layout.modes[partner])] += 1;
        v.amps[s] += cplx(1.0 / std::sqrt(3.0), 0);
    }
    return v;
}

} // namespace photonq

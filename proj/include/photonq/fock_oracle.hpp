#pragma once

#include "photonq/elements.hpp"
#include "photonq/encoding.hpp"

#include <map>
#include <vector>

namespace photonq {

// Sparse amplitude map over truncated Fock states. Ground truth for the qubit
// pipeline: element unitaries are applied exactly (dense exponentials of the
// truncated generators on the affected one- or two-register blocks), with no
// Pauli translation and no Trotterization involved.
struct FockVector {
    SetupLayout layout;
    std::map<FockState, cplx> amps;

    double norm() const;
    FockVector& prune(double eps = 1e-14);
    FockVector& normalize();
};

FockVector fock_vacuum(const SetupLayout& layout);
FockVector basis_vector(const SetupLayout& layout, const FockState& state);

cplx overlap(const FockVector& a, const FockVector& b);  // <a|b>

// Exact unitary action of one element; params bind its angle expressions.
FockVector apply_element_exact(const FockVector& vec, const OpticalElement& element,
                               const ParamMap& params);

FockVector apply_setup_exact(const FockVector& initial, const std::vector<OpticalElement>& elements,
                             const ParamMap& params);

std::map<FockState, double> exact_distribution(const FockVector& initial,
                                               const std::vector<OpticalElement>& elements,
                                               const ParamMap& params);

// Parametrized one-photon trigger state on a three-mode path:
// cos(a)|1_m1> + sin(a)cos(b)|1_m2> + sin(a)sin(b)|1_m3>, modes in layout order.
struct HeraldSpec {
    std::string path;
    ParamExpr alpha;
    ParamExpr beta;
};

// Post-selected fidelity <Phi| P_p (x) H P_1 |Phi> / <Phi| P_p (x) P_1 |Phi>
// computed by direct projection: P_p = |t(alpha,beta)><t| on the trigger path,
// P_1 keeps exactly one photon in each post-selected path, H = |target><target|.
// Throws DegenerateFidelityError when the denominator vanishes.
double exact_post_selected_fidelity(const FockVector& output, const FockVector& target,
                                    const HeraldSpec& herald,
                                    const std::vector<std::string>& postselect_paths,
                                    const ParamMap& params);

// Initial-state constructions mirroring the qubit-side preparations.
FockVector bell3_fock_vector(const SetupLayout& layout, const std::string& path_1,
                             const std::string& path_2, bool anti);

} // namespace photonq

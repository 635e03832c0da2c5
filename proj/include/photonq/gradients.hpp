#pragma once

#include "photonq/objectives.hpp"

#include <optional>
#include <vector>

namespace photonq {

// Parameter-shift data for a gate whose generator has two eigenvalues at
// distance 2r: d/da E(a) = r * [E(a + pi/(4r)) - E(a - pi/(4r))].
struct ShiftRule {
    double r = 0.5;
    double shift = 0;  // pi / (4 r)
};

// Rule for one gate occurrence. nullopt when the gate carries no free
// parameter; DifferentiationError when a parametrized gate is not
// shift-eligible (multi-controlled rotations that survived lowering).
std::optional<ShiftRule> shift_rule(const Gate& gate);

// Replaces every parametrized single-control rotation with a shift-eligible
// decomposition (two half-angle rotations around CNOTs). Parametrized
// rotations with several controls raise DifferentiationError; constant gates
// pass through untouched.
GateCircuit lower_for_shifts(const GateCircuit& circuit);

// Analytic gradient in objective.parameters order: parameter-shift per gate
// occurrence, product rule over occurrences (affine coefficients), quotient
// rule for ratio objectives. A degenerate denominator yields a zero gradient.
std::vector<double> gradient(const Objective& objective, const ParamMap& params);

// Central finite differences of evaluate(); the test oracle for the rule.
std::vector<double> finite_difference(const Objective& objective, const ParamMap& params,
                                      double h = 1e-5);

} // namespace photonq

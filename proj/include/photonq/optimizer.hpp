#pragma once

#include "photonq/gradients.hpp"
#include "photonq/objectives.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace photonq {

enum class OptMethod { BFGS, GradientAscent };

struct OptConfig {
    OptMethod method = OptMethod::BFGS;
    int max_iters = 200;
    double gtol = 1e-6;  // L2 gradient norm
    std::uint64_t seed = 0;
};

struct TraceRecord {
    int iteration = 0;
    std::vector<double> params;
    double value = 0;
    double grad_norm = 0;
    double denominator = 1;
};

struct OptTrace {
    std::vector<TraceRecord> records;
};

struct OptResult {
    std::vector<double> best_params;
    double best_value = 0;
    bool converged = false;  // gradient norm fell below gtol
    OptTrace trace;
    std::vector<std::string> warnings;
};

// Maximizes the objective (internally minimizes its negation). The trace
// holds the evaluation at every accepted iterate, including the initial one;
// best_params is the best-so-far across the trace.
OptResult optimize(const Objective& objective, const std::vector<double>& init,
                   const OptConfig& config = {});

using InitSampler = std::function<std::vector<double>(int start_index, std::uint64_t seed)>;

// Angles close to zero with alternating signs: |x_i| uniform in [0, 0.2],
// sign +,-,+,-,...; deterministic in (seed, start_index).
std::vector<double> default_init_sampler(const Objective& objective, int start_index,
                                         std::uint64_t seed);

struct MultistartResult {
    OptResult best;
    int best_start = -1;
    std::vector<OptResult> runs;
};

MultistartResult multistart(const Objective& objective, int n_starts, const InitSampler& sampler,
                            const OptConfig& config = {});

// CSV with header iteration,value,grad_norm,denominator,<param names...>;
// numbers printed with %.17g for byte-stable round-trips.
std::string trace_csv(const Objective& objective, const OptTrace& trace);

} // namespace photonq

#pragma once

#include "photonq/setup_file.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace photonq {

// Subcommand entry points. Each returns a process exit code: 0 success,
// 1 threshold/tolerance failure, 2 configuration or schema error. The thin
// binary in tools/ only parses argv and forwards here, so tests can drive the
// exact production paths in-process.

struct SimulateArgs {
    std::string file;
    std::string backend = "qubit";  // or "oracle"
    int steps = 0;                  // 0: use the file's simulation.steps
    std::vector<int> sweep;         // nonempty: one CSV per step count (needs out_dir)
    std::string out_dir;
};

struct OptimizeArgs {
    std::string file;
    int seeds = 0;      // 0: file value
    int max_iters = 0;  // 0: file value
    std::string method; // "": file value; else "bfgs" / "gradient_ascent"
    std::string out_dir;
};

struct GradcheckArgs {
    std::string file;
    double h = 1e-5;
    double tol = 1e-5;
};

struct SampleArgs {
    std::string file;
    long shots = -1;        // <0: file value
    std::int64_t seed = -1; // <0: file value
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_optimize(const OptimizeArgs& args, std::ostream& out, std::ostream& err);
int cmd_gradcheck(const GradcheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_sample(const SampleArgs& args, std::ostream& out, std::ostream& err);

} // namespace photonq

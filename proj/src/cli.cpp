#include "photonq/cli.hpp"

#include "photonq/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

namespace photonq {

namespace {

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) { return '"' + s + '"'; }

// Distribution rows sorted by probability (descending), label as tiebreak.
using Rows = std::vector<std::pair<std::string, double>>;

void sort_rows(Rows& rows) {
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
}

void write_distribution(std::ostream& o, const Rows& rows, double valid_fraction) {
    o << "# valid_state_fraction " << fmt_num(valid_fraction) << '\n';
    o << "fock_label,probability\n";
    for (const auto& [label, p] : rows) o << csv_quote(label) << ',' << fmt_num(p) << '\n';
}

int run_guarded(std::ostream& err, int (*body)(const void*, std::ostream&, std::ostream&),
                const void* args, std::ostream& out) {
    try {
        return body(args, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

int simulate_body(const void* p, std::ostream& out, std::ostream& err) {
    const auto& args = *static_cast<const SimulateArgs*>(p);
    if (args.backend != "qubit" && args.backend != "oracle")
        throw ConfigError("backend must be 'qubit' or 'oracle'");
    Setup setup = parse_setup_file(args.file);

    auto distribution = [&](int steps) -> std::pair<Rows, double> {
        Rows rows;
        if (args.backend == "oracle") {
            auto dist = exact_distribution(oracle_initial(setup), setup.elements,
                                           setup.parameters);
            for (const auto& [state, prob] : dist)
                rows.emplace_back(fock_label(setup.layout, state), prob);
            sort_rows(rows);
            return {rows, 1.0};
        }
        std::vector<std::string> warnings;
        GateCircuit circuit = build_setup_circuit(setup, steps, &warnings);
        for (const auto& w : warnings) err << "warning: " << w << '\n';
        StateVector st = run(circuit);
        double invalid = 0;
        std::map<std::string, double> by_label;
        for (std::uint64_t i = 0; i < st.amps.size(); ++i) {
            double prob = std::norm(st.amps[i]);
            if (prob <= 1e-16) continue;
            if (auto fock = decode_index(i, setup.layout))
                by_label[fock_label(setup.layout, *fock)] += prob;
            else
                invalid += prob;
        }
        for (const auto& [label, prob] : by_label) rows.emplace_back(label, prob);
        sort_rows(rows);
        if (invalid > 1e-16) rows.emplace_back("invalid", invalid);
        return {rows, valid_state_fraction(st, setup.layout, total_photons(setup))};
    };

    if (!args.sweep.empty()) {
        if (args.out_dir.empty()) throw ConfigError("--sweep needs --out");
        std::filesystem::create_directories(args.out_dir);
        for (int steps : args.sweep) {
            if (steps < 1) throw ConfigError("sweep steps must be >= 1");
            auto [rows, vsf] = distribution(steps);
            std::string path = args.out_dir + "/dist_steps_" + std::to_string(steps) + ".csv";
            std::ofstream f(path);
            if (!f) throw ConfigError("cannot write '" + path + "'");
            write_distribution(f, rows, vsf);
            out << "wrote " << path << '\n';
        }
        return 0;
    }

    int steps = args.steps > 0 ? args.steps : setup.simulation.steps;
    auto [rows, vsf] = distribution(steps);
    if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        std::string path = args.out_dir + "/distribution.csv";
        std::ofstream f(path);
        if (!f) throw ConfigError("cannot write '" + path + "'");
        write_distribution(f, rows, vsf);
        out << "wrote " << path << '\n';
    } else {
        write_distribution(out, rows, vsf);
    }
    return 0;
}

int optimize_body(const void* p, std::ostream& out, std::ostream& err) {
    const auto& args = *static_cast<const OptimizeArgs*>(p);
    Setup setup = parse_setup_file(args.file);
    Objective objective = build_objective(setup, setup.simulation.steps);

    OptConfig config;
    config.max_iters = args.max_iters > 0 ? args.max_iters : setup.optimization.max_iters;
    config.seed = setup.simulation.seed;
    if (args.method.empty()) {
        config.method = setup.optimization.method;
    } else if (args.method == "bfgs") {
        config.method = OptMethod::BFGS;
    } else if (args.method == "gradient_ascent") {
        config.method = OptMethod::GradientAscent;
    } else {
        throw ConfigError("method must be 'bfgs' or 'gradient_ascent'");
    }
    int n_starts = args.seeds > 0 ? args.seeds : setup.optimization.seeds;

    auto sampler = [&](int k, std::uint64_t seed) {
        return default_init_sampler(objective, k, seed);
    };
    MultistartResult ms = multistart(objective, n_starts, sampler, config);

    for (std::size_t k = 0; k < ms.runs.size(); ++k) {
        const OptResult& r = ms.runs[k];
        out << "start " << k << " value " << fmt_num(r.best_value) << " iterations "
            << (r.trace.records.empty() ? 0 : r.trace.records.back().iteration) << " converged "
            << (r.converged ? 1 : 0) << '\n';
        for (const auto& w : r.warnings) err << "warning: start " << k << ": " << w << '\n';
    }
    out << "best_start " << ms.best_start << '\n';
    out << "best_value " << fmt_num(ms.best.best_value) << '\n';
    for (std::size_t i = 0; i < objective.parameters.size(); ++i)
        out << "param " << objective.parameters[i] << ' ' << fmt_num(ms.best.best_params[i])
            << '\n';

    if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        for (std::size_t k = 0; k < ms.runs.size(); ++k) {
            std::string path = args.out_dir + "/trace_seed_" + std::to_string(k) + ".csv";
            std::ofstream f(path);
            if (!f) throw ConfigError("cannot write '" + path + "'");
            f << trace_csv(objective, ms.runs[k].trace);
            out << "wrote " << path << '\n';
        }
    }
    double threshold = setup.optimization.success_threshold;
    if (ms.best.best_value < threshold) {
        err << "best value " << fmt_num(ms.best.best_value) << " is below the success threshold "
            << fmt_num(threshold) << '\n';
        return 1;
    }
    return 0;
}

int gradcheck_body(const void* p, std::ostream& out, std::ostream&) {
    const auto& args = *static_cast<const GradcheckArgs*>(p);
    if (args.h <= 0) throw ConfigError("--h must be positive");
    if (args.tol <= 0) throw ConfigError("--tol must be positive");
    Setup setup = parse_setup_file(args.file);
    Objective objective = build_objective(setup, setup.simulation.steps);

    std::vector<double> analytic = gradient(objective, setup.parameters);
    std::vector<double> numeric = finite_difference(objective, setup.parameters, args.h);
    double worst = 0;
    out << "parameter,analytic,numeric,abs_delta\n";
    for (std::size_t i = 0; i < objective.parameters.size(); ++i) {
        double delta = std::abs(analytic[i] - numeric[i]);
        worst = std::max(worst, delta);
        out << objective.parameters[i] << ',' << fmt_num(analytic[i]) << ','
            << fmt_num(numeric[i]) << ',' << fmt_num(delta) << '\n';
    }
    out << "# max_abs_delta " << fmt_num(worst) << '\n';
    return worst > args.tol ? 1 : 0;
}

int sample_body(const void* p, std::ostream& out, std::ostream& err) {
    const auto& args = *static_cast<const SampleArgs*>(p);
    Setup setup = parse_setup_file(args.file);
    long shots = args.shots >= 0 ? args.shots : setup.simulation.shots;
    std::uint64_t seed =
        args.seed >= 0 ? std::uint64_t(args.seed) : setup.simulation.seed;

    std::vector<std::string> warnings;
    GateCircuit circuit = build_setup_circuit(setup, setup.simulation.steps, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    StateVector st = run(circuit);
    auto counts = sample(st, shots, seed);

    long all_zero = 0;
    if (auto it = counts.find(0); it != counts.end()) all_zero = it->second;
    out << "# all_zero_count " << all_zero << '\n';
    out << "bitstring,fock_label,count\n";
    std::vector<std::pair<std::uint64_t, long>> rows(counts.begin(), counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    for (const auto& [index, count] : rows) {
        std::string label = "invalid";
        if (auto fock = decode_index(index, setup.layout))
            label = fock_label(setup.layout, *fock);
        out << index_bitstring(index, st.n_qubits) << ',' << csv_quote(label) << ',' << count
            << '\n';
    }
    return 0;
}

} // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, simulate_body, &args, out);
}
int cmd_optimize(const OptimizeArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, optimize_body, &args, out);
}
int cmd_gradcheck(const GradcheckArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, gradcheck_body, &args, out);
}
int cmd_sample(const SampleArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, sample_body, &args, out);
}

} // namespace photonq

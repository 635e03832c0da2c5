#include "doctest.h"

#include "photonq/optimizer.hpp"
#include "photonq/elements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace photonq;

namespace {

// E(a) = (1 + cos a)/2, maximized at a = 0 with value 1.
Objective cosine_bowl(const std::string& name = "a") {
    GateCircuit c;
    c.append(Gate::rot(Axis::Y, 0, ParamExpr::symbol(name)));
    Objective obj;
    obj.numerator = {std::make_shared<GateCircuit>(c), ZeroProjector{{0}}};
    obj.parameters = {name};
    return obj;
}

Objective two_qubit_bowl() {
    GateCircuit c;
    c.n_qubits = 2;
    c.append(Gate::rot(Axis::Y, 0, ParamExpr::symbol("a")));
    c.append(Gate::rot(Axis::Y, 1, ParamExpr::symbol("b")));
    Objective obj;
    obj.numerator = {std::make_shared<GateCircuit>(c), ZeroProjector{{0, 1}}};
    obj.parameters = {"a", "b"};
    return obj;
}

} // namespace

TEST_CASE("bfgs climbs a one-parameter bowl") {
    auto obj = cosine_bowl();
    OptResult res = optimize(obj, {0.9});
    CHECK(res.converged);
    CHECK(res.best_value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(std::remainder(res.best_params[0], 2 * std::numbers::pi)) < 1e-4);
    CHECK(res.warnings.empty());

    // Trace starts at iteration 0 with the init point.
    REQUIRE(!res.trace.records.empty());
    CHECK(res.trace.records[0].iteration == 0);
    CHECK(res.trace.records[0].params[0] == 0.9);
    double best = 0;
    for (const auto& r : res.trace.records) best = std::max(best, r.value);
    CHECK(res.best_value == best);
}

TEST_CASE("bfgs solves the separable two-parameter bowl") {
    OptResult res = optimize(two_qubit_bowl(), {0.7, -1.1});
    CHECK(res.converged);
    CHECK(res.best_value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("gradient ascent converges on the same bowl") {
    OptConfig cfg;
    cfg.method = OptMethod::GradientAscent;
    cfg.max_iters = 500;
    OptResult res = optimize(cosine_bowl(), {0.9}, cfg);
    CHECK(res.best_value > 0.999999);
}

TEST_CASE("iteration budget is honored") {
    OptConfig cfg;
    cfg.max_iters = 3;
    OptResult res = optimize(cosine_bowl(), {1.2}, cfg);
    CHECK(res.trace.records.size() <= 4);  // init + 3 accepted steps
    for (std::size_t i = 0; i < res.trace.records.size(); ++i)
        CHECK(res.trace.records[i].iteration == static_cast<int>(i));
}

TEST_CASE("wrong init length is rejected") {
    CHECK_THROWS_AS(optimize(cosine_bowl(), {0.1, 0.2}), ConfigError);
    CHECK_THROWS_AS(optimize(cosine_bowl(), {}), ConfigError);
}

TEST_CASE("default init sampler is bounded, alternating, deterministic") {
    auto obj = two_qubit_bowl();
    auto x = default_init_sampler(obj, 0, 7);
    REQUIRE(x.size() == 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(std::abs(x[i]) <= 0.2);
        if (i % 2 == 0) CHECK(x[i] >= 0.0);
        else CHECK(x[i] <= 0.0);
    }
    CHECK(default_init_sampler(obj, 0, 7) == x);
    CHECK(default_init_sampler(obj, 1, 7) != x);
    CHECK(default_init_sampler(obj, 0, 8) != x);
}

TEST_CASE("multistart picks the best run and is reproducible") {
    auto obj = cosine_bowl();
    auto sampler = [&](int k, std::uint64_t seed) {
        return default_init_sampler(obj, k, seed);
    };
    OptConfig cfg;
    cfg.seed = 5;
    MultistartResult ms = multistart(obj, 4, sampler, cfg);
    REQUIRE(ms.runs.size() == 4);
    CHECK(ms.best_start >= 0);
    for (const auto& run : ms.runs) CHECK(run.best_value <= ms.best.best_value);
    CHECK(ms.runs[ms.best_start].best_value == ms.best.best_value);

    // Single-start multistart reproduces a direct optimize call.
    MultistartResult one = multistart(obj, 1, sampler, cfg);
    OptResult direct = optimize(obj, sampler(0, cfg.seed), cfg);
    CHECK(one.best.best_value == direct.best_value);
    CHECK(one.best.best_params == direct.best_params);

    // Identical seeds give byte-identical traces.
    MultistartResult ms2 = multistart(obj, 4, sampler, cfg);
    for (int k = 0; k < 4; ++k)
        CHECK(trace_csv(obj, ms.runs[k].trace) == trace_csv(obj, ms2.runs[k].trace));
}

TEST_CASE("trace csv format") {
    auto obj = two_qubit_bowl();
    OptConfig cfg;
    cfg.max_iters = 2;
    OptResult res = optimize(obj, {0.3, -0.2}, cfg);
    std::string csv = trace_csv(obj, res.trace);
    CHECK(csv.rfind("iteration,value,grad_norm,denominator,a,b\n", 0) == 0);
    auto lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == static_cast<long>(res.trace.records.size()) + 1);
    CHECK(csv.find("0,") == csv.find('\n') + 1);
}

TEST_CASE("degenerate objectives warn instead of failing") {
    // The trigger path never receives a photon, so the denominator is 0
    // everywhere and every evaluation is degenerate.
    SetupLayout lay = build_layout({"t", "p"}, {-1, 0, 1}, 1);
    HeraldSpec herald{"t", ParamExpr::constant(0.4), ParamExpr::constant(0.2)};
    GateCircuit setup = compile_photon_inject(lay, {"p", 0, 1});
    setup.append(compile_dove_prism(lay, {"p", ParamExpr::symbol("phi")}));
    setup.n_qubits = lay.total_qubits;
    FockVector target = basis_vector(lay, make_fock(lay, {{"p", 0, 1}}));
    Objective obj = build_post_selected_fidelity(lay, setup, target, herald, {"p"});

    OptResult res = optimize(obj, {0.8});
    CHECK(res.best_value == 0.0);
    REQUIRE(!res.warnings.empty());
    CHECK(res.warnings[0].find("degenerate denominator at the initial point") != std::string::npos);
    CHECK(res.warnings.size() <= 21);
    if (res.warnings.size() == 21)
        CHECK(res.warnings.back().find("further warnings suppressed") != std::string::npos);
}

#include "doctest.h"

#include "photonq/elements.hpp"
#include "photonq/fock_oracle.hpp"
#include "photonq/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace photonq;

namespace {

const double pi = std::numbers::pi;

StateVector encode(const FockVector& v) {
    StateVector st = zero_state(v.layout.total_qubits);
    st.amps[0] = cplx(0, 0);
    for (const auto& [f, a] : v.amps) st.amps[fock_index(f, v.layout)] = a;
    return st;
}

StateVector apply_circuit(StateVector st, const GateCircuit& c, const ParamMap& params = {}) {
    for (const auto& g : c.gates) apply_gate(st, g, params);
    return st;
}

double oracle_distance(const StateVector& got, const FockVector& want) {
    StateVector w = encode(want);
    double d = 0;
    for (std::size_t i = 0; i < got.amps.size(); ++i) d += std::norm(got.amps[i] - w.amps[i]);
    return std::sqrt(d);
}

FockVector random_fock_vector(const SetupLayout& lay, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<> u(-1, 1);
    FockVector v{lay, {}};
    std::uint64_t dim = std::uint64_t(1) << lay.total_qubits;
    for (std::uint64_t i = 0; i < dim; ++i)
        if (auto f = decode_index(i, lay)) v.amps[*f] = cplx(u(gen), u(gen));
    v.normalize();
    return v;
}

// Qubit path vs oracle on random encoded inputs.
void check_element(const SetupLayout& lay, const OpticalElement& el, const ParamMap& params,
                   int steps, double tol, std::uint64_t seed0 = 42) {
    GateCircuit c = compile_setup(lay, {el}, steps);
    for (int rep = 0; rep < 10; ++rep) {
        FockVector in = random_fock_vector(lay, seed0 + rep);
        StateVector got = apply_circuit(encode(in), c, params);
        FockVector want = apply_element_exact(in, el, params);
        CHECK(oracle_distance(got, want) < tol);
        CHECK(std::abs(got.norm() - 1.0) < 1e-10);
    }
}

} // namespace

TEST_CASE("phase shifter puts e^{i n phi} on photon count n") {
    SetupLayout lay = build_layout({"p"}, {0}, 3);
    double phi = 0.7;
    GateCircuit c = compile_phase_shifter(lay, {"p", 0, ParamExpr::constant(phi)});
    CHECK(c.gates.size() == 2);  // one PhaseS per register bit
    for (int n = 0; n <= 3; ++n) {
        FockVector in = basis_vector(lay, make_fock(lay, {{"p", 0, n}}));
        StateVector out = apply_circuit(encode(in), c);
        cplx got = out.amps[fock_index(in.amps.begin()->first, lay)];
        CHECK(std::abs(got - std::exp(cplx(0, n * phi))) < 1e-12);
    }
}

TEST_CASE("phase shifter covers all modes when none is given") {
    SetupLayout lay = build_layout({"p", "q"}, {-1, 1}, 1);
    PhaseShifter all{"p", std::nullopt, ParamExpr::constant(0.3)};
    CHECK(compile_phase_shifter(lay, all).gates.size() == 2);
    PhaseShifter one{"p", -1, ParamExpr::constant(0.3)};
    CHECK(compile_phase_shifter(lay, one).gates.size() == 1);
    check_element(lay, all, {}, 1, 1e-10);
    check_element(lay, one, {}, 1, 1e-10);

    CHECK_THROWS_AS(compile_phase_shifter(lay, {"nope", 0, ParamExpr::constant(1)}),
                    LookupError);
}

TEST_CASE("dove prism weights the phase by the mode label") {
    SetupLayout lay = build_layout({"p"}, {-1, 0, 1}, 1);
    double phi = 0.9;
    GateCircuit c = compile_dove_prism(lay, {"p", ParamExpr::constant(phi)});
    CHECK(c.gates.size() == 2);  // mode 0 contributes nothing
    for (int m : {-1, 0, 1}) {
        FockVector in = basis_vector(lay, make_fock(lay, {{"p", m, 1}}));
        StateVector out = apply_circuit(encode(in), c);
        cplx got = out.amps[fock_index(in.amps.begin()->first, lay)];
        CHECK(std::abs(got - std::exp(cplx(0, m * phi))) < 1e-12);
    }
    check_element(lay, DovePrism{"p", ParamExpr::constant(phi)}, {}, 1, 1e-10);
}

TEST_CASE("photonic swap moves whole registers") {
    SetupLayout lay = build_layout({"a", "b"}, {0, 1}, 3);
    PhotonicSwap sw{"a", 0, "b", 1};
    GateCircuit c = compile_photonic_swap(lay, sw);
    CHECK(c.gates.size() == 2);  // two bits per register
    FockVector in = basis_vector(lay, make_fock(lay, {{"a", 0, 2}, {"b", 1, 1}}));
    StateVector out = apply_circuit(encode(in), c);
    FockState want = make_fock(lay, {{"a", 0, 1}, {"b", 1, 2}});
    CHECK(std::abs(out.amps[fock_index(want, lay)] - cplx(1, 0)) < 1e-12);
    check_element(lay, sw, {}, 1, 1e-10);
    // Swapping a register with itself is a no-op, not an error.
    CHECK(compile_photonic_swap(lay, {"a", 0, "a", 0}).gates.empty());
}

TEST_CASE("mirror flips the mode sign") {
    SetupLayout lay = build_layout({"p", "q"}, {-1, 0, 1}, 1);
    Mirror m{"p"};
    FockVector in = basis_vector(lay, make_fock(lay, {{"p", 1, 1}, {"q", 1, 1}}));
    StateVector out = apply_circuit(encode(in), compile_mirror(lay, m));
    FockState want = make_fock(lay, {{"p", -1, 1}, {"q", 1, 1}});
    CHECK(std::abs(out.amps[fock_index(want, lay)] - cplx(1, 0)) < 1e-12);
    check_element(lay, m, {}, 1, 1e-10);

    SetupLayout lopsided = build_layout({"p"}, {0, 1}, 1);
    CHECK_THROWS_AS(compile_mirror(lopsided, {"p"}), ConfigError);
}

TEST_CASE("hologram shifts modes up cyclically") {
    SetupLayout lay = build_layout({"p"}, {-1, 0, 1}, 1);
    Hologram h{"p"};
    GateCircuit c = compile_hologram(lay, h);
    auto landing = [&](int m_from, int m_to) {
        FockVector in = basis_vector(lay, make_fock(lay, {{"p", m_from, 1}}));
        StateVector out = apply_circuit(encode(in), c);
        FockState want = make_fock(lay, {{"p", m_to, 1}});
        CHECK(std::abs(out.amps[fock_index(want, lay)] - cplx(1, 0)) < 1e-12);
    };
    landing(-1, 0);
    landing(0, 1);
    landing(1, -1);  // top wraps to the bottom
    check_element(lay, h, {}, 1, 1e-10);
}

TEST_CASE("compact beam splitter at cutoff 1") {
    SetupLayout lay = build_layout({"a", "b"}, {0}, 1);
    double theta = 0.6;
    BeamSplitter bs{"a", "b", ParamExpr::constant(theta), cplx(1, 0)};
    GateCircuit c = compile_beam_splitter(lay, bs, 1);
    CHECK(c.gates.size() == 2);  // XX and YY exponentials, no phase frame

    FockVector one = basis_vector(lay, make_fock(lay, {{"a", 0, 1}}));
    StateVector out = apply_circuit(encode(one), c);
    FockState in_a = make_fock(lay, {{"a", 0, 1}});
    FockState in_b = make_fock(lay, {{"b", 0, 1}});
    CHECK(std::abs(out.amps[fock_index(in_a, lay)] - std::cos(theta)) < 1e-12);
    CHECK(std::abs(out.amps[fock_index(in_b, lay)] - cplx(0, std::sin(theta))) < 1e-12);

    // |1,1> is frozen by the truncated generator; both backends must agree.
    FockVector both = basis_vector(lay, make_fock(lay, {{"a", 0, 1}, {"b", 0, 1}}));
    StateVector frozen = apply_circuit(encode(both), c);
    CHECK(std::abs(frozen.amps[fock_index(both.amps.begin()->first, lay)] - cplx(1, 0)) < 1e-12);

    check_element(lay, bs, {}, 1, 1e-10);

    BeamSplitter framed{"a", "b", ParamExpr::constant(theta), std::exp(cplx(0, 0.8))};
    CHECK(compile_beam_splitter(lay, framed, 1).gates.size() == 4);
    check_element(lay, framed, {}, 1, 1e-10, 77);

    SetupLayout multi = build_layout({"a", "b"}, {-1, 0, 1}, 1);
    BeamSplitter wide{"a", "b", ParamExpr::symbol("t"), std::exp(cplx(0, -1.1))};
    check_element(multi, wide, {{"t", 0.45}}, 1, 1e-10, 91);
}

TEST_CASE("beam splitter validation") {
    SetupLayout lay = build_layout({"a", "b"}, {0}, 1);
    CHECK_THROWS_AS(
        compile_beam_splitter(lay, {"a", "a", ParamExpr::constant(1), cplx(1, 0)}, 1),
        ConfigError);
    CHECK_THROWS_AS(
        compile_beam_splitter(lay, {"a", "b", ParamExpr::constant(1), cplx(2, 0)}, 1),
        ConfigError);
    CHECK_THROWS_AS(
        compile_beam_splitter(lay, {"a", "b", ParamExpr::constant(1), cplx(1, 0)}, 0),
        ConfigError);
    CHECK_THROWS_AS(
        compile_beam_splitter(lay, {"a", "z", ParamExpr::constant(1), cplx(1, 0)}, 1),
        LookupError);
}

TEST_CASE("trotterized beam splitter converges to the oracle") {
    SetupLayout lay = build_layout({"a", "b"}, {0}, 3);
    BeamSplitter bs{"a", "b", ParamExpr::constant(0.5), std::exp(cplx(0, 0.4))};
    FockVector in = random_fock_vector(lay, 7);
    FockVector want = apply_element_exact(in, bs, {});
    double prev = 1e9;
    for (int steps : {1, 5, 25, 125, 625}) {
        GateCircuit c = compile_beam_splitter(lay, bs, steps);
        StateVector got = apply_circuit(encode(in), c);
        double d = oracle_distance(got, want);
        CHECK(d < prev + 1e-12);
        prev = d;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("pair source at cutoff 1 is the cos/sin rotation") {
    SetupLayout lay = build_layout({"a", "b"}, {0}, 1);
    double omega = 1.1;
    PairSource src{"a", 0, "b", 0, ParamExpr::constant(omega)};
    GateCircuit c = compile_pair_source(lay, src, 1);
    StateVector out = run(c);
    FockState pair = make_fock(lay, {{"a", 0, 1}, {"b", 0, 1}});
    CHECK(std::abs(out.amps[0] - std::cos(omega / 2)) < 1e-12);
    CHECK(std::abs(out.amps[fock_index(pair, lay)] - std::sin(omega / 2)) < 1e-12);
    check_element(lay, src, {}, 1, 1e-10);

    CHECK_THROWS_AS(compile_pair_source(lay, {"a", 0, "a", 0, ParamExpr::constant(1)}, 1),
                    ConfigError);
    CHECK_THROWS_AS(compile_pair_source(lay, src, 0), ConfigError);
}

TEST_CASE("photon injection writes the binary count") {
    SetupLayout lay = build_layout({"p"}, {0, 1}, 3);
    GateCircuit c = compile_photon_inject(lay, {"p", 1, 2});
    StateVector out = run(c);
    FockState want = make_fock(lay, {{"p", 1, 2}});
    CHECK(std::abs(out.amps[fock_index(want, lay)] - cplx(1, 0)) < 1e-12);
    CHECK(c.gates.size() == 1);  // binary 10: a single X
    CHECK_THROWS_AS(compile_photon_inject(lay, {"p", 0, 4}), EncodingError);
    CHECK_THROWS_AS(compile_photon_inject(lay, {"p", 0, -1}), EncodingError);
}

TEST_CASE("compile_setup orders elements and reports hologram wrap") {
    SetupLayout lay = build_layout({"p", "q"}, {-1, 0, 1}, 1);
    std::vector<std::string> warnings;

    std::vector<OpticalElement> risky{PhotonInject{"p", 1, 1}, Hologram{"p"}};
    compile_setup(lay, risky, 1, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("hologram on path 'p'") != std::string::npos);

    warnings.clear();
    std::vector<OpticalElement> safe{PhotonInject{"p", 0, 1}, Hologram{"p"}};
    compile_setup(lay, safe, 1, &warnings);
    CHECK(warnings.empty());

    std::vector<OpticalElement> pumped{PairSource{"q", 0, "p", 1, ParamExpr::constant(0.2)},
                                       Hologram{"p"}};
    compile_setup(lay, pumped, 1, &warnings);
    CHECK(warnings.size() == 1);

    // Order matters: inject then shift lands elsewhere than shift then inject.
    std::vector<OpticalElement> seq{PhotonInject{"p", -1, 1}, Hologram{"p"}};
    StateVector a = run(compile_setup(lay, seq, 1));
    FockState shifted = make_fock(lay, {{"p", 0, 1}});
    CHECK(std::abs(a.amps[fock_index(shifted, lay)] - cplx(1, 0)) < 1e-12);
}

TEST_CASE("qutrit cascade prepares the parametrized one-hot state") {
    auto amp_at = [](const StateVector& st, int idx) { return st.amps[idx]; };
    // Qubits (0,1,2); |100> = 4, |010> = 2, |001> = 1.
    GateCircuit zero = qutrit_prep_circuit({0, 1, 2}, ParamExpr::constant(0),
                                           ParamExpr::constant(0.3));
    StateVector s0 = run(zero);
    CHECK(std::abs(amp_at(s0, 4) - cplx(1, 0)) < 1e-12);

    std::mt19937_64 gen(3);
    std::uniform_real_distribution<> u(-2.0, 2.0);
    for (int rep = 0; rep < 8; ++rep) {
        double alpha = u(gen), beta = u(gen);
        GateCircuit c =
            qutrit_prep_circuit({0, 1, 2}, ParamExpr::symbol("al"), ParamExpr::symbol("be"));
        StateVector st = run(c, {{"al", alpha}, {"be", beta}});
        CHECK(std::abs(amp_at(st, 4) - std::cos(alpha)) < 1e-12);
        CHECK(std::abs(amp_at(st, 2) - std::sin(alpha) * std::cos(beta)) < 1e-12);
        CHECK(std::abs(amp_at(st, 1) - std::sin(alpha) * std::sin(beta)) < 1e-12);
    }
    CHECK_THROWS_AS(qutrit_prep_circuit({0, 1}, ParamExpr::constant(1), ParamExpr::constant(1)),
                    ConfigError);
}

TEST_CASE("bell3 preparation matches the oracle pair state") {
    SetupLayout lay = build_layout({"a", "b"}, {-1, 0, 1}, 1);
    for (bool anti : {true, false}) {
        StateVector got = run(bell3_prep_circuit(lay, "a", "b", anti));
        FockVector want = bell3_fock_vector(lay, "a", "b", anti);
        CHECK(oracle_distance(got, want) < 1e-12);
    }
    // The anti-correlated pair couples m with -m.
    StateVector st = run(bell3_prep_circuit(lay, "a", "b", true));
    FockState pm = make_fock(lay, {{"a", -1, 1}, {"b", 1, 1}});
    CHECK(std::abs(st.amps[fock_index(pm, lay)] - 1.0 / std::sqrt(3.0)) < 1e-12);

    CHECK_THROWS_AS(bell3_prep_circuit(lay, "a", "a", true), ConfigError);
    SetupLayout big = build_layout({"a", "b"}, {-1, 0, 1}, 3);
    CHECK_THROWS_AS(bell3_prep_circuit(big, "a", "b", true), UnsupportedError);
    SetupLayout two = build_layout({"a", "b"}, {0, 1}, 1);
    CHECK_THROWS_AS(bell3_prep_circuit(two, "a", "b", true), UnsupportedError);
}

TEST_CASE("every exact element matches the oracle on random states") {
    SetupLayout lay = build_layout({"a", "b"}, {-1, 0, 1}, 1);
    std::vector<OpticalElement> elements{
        PhaseShifter{"a", std::nullopt, ParamExpr::constant(0.37)},
        PhaseShifter{"b", 1, ParamExpr::constant(-1.4)},
        DovePrism{"b", ParamExpr::constant(2.2)},
        PhotonicSwap{"a", -1, "b", 0},
        Mirror{"a"},
        Hologram{"b"},
        BeamSplitter{"a", "b", ParamExpr::constant(pi / 4), std::exp(cplx(0, 0.5))},
    };
    std::uint64_t seed = 400;
    for (const auto& el : elements) check_element(lay, el, {}, 1, 1e-10, seed += 13);
}

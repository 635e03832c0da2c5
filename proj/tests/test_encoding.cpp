#include "doctest.h"

#include "photonq/encoding.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace photonq;

namespace {

// Independent dense truncated ladder matrix: <n|a+|m> = sqrt(m+1) [n == m+1].
Eigen::MatrixXcd dense_creation(int cutoff, int dim) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k + 1 <= cutoff; ++k) m(k + 1, k) = std::sqrt(double(k + 1));
    return m;
}

} // namespace

TEST_CASE("layout geometry and qubit maps") {
    SetupLayout lay = build_layout({"a", "b"}, {-1, 0, 1}, 1);
    CHECK(lay.qubits_per_mode == 1);
    CHECK(lay.total_qubits == 6);
    CHECK(lay.n_slots() == 6);
    CHECK(lay.path_index("b") == 1);
    CHECK(lay.mode_index(-1) == 0);
    CHECK(lay.slot_of("b", 0) == 4);
    CHECK(lay.first_qubit_of_slot(4) == 4);
    CHECK(lay.mode_qubits("b", 0) == std::vector<int>{4});
    CHECK(lay.path_qubits("a") == std::vector<int>{0, 1, 2});

    SetupLayout wide = build_layout({"p"}, {0}, 3);
    CHECK(wide.qubits_per_mode == 2);
    CHECK(wide.total_qubits == 2);
    CHECK(wide.mode_qubits("p", 0) == std::vector<int>{0, 1});

    // A cutoff of 2 still needs two qubits; the 11 pattern is unused.
    CHECK(build_layout({"p"}, {0}, 2).qubits_per_mode == 2);
    CHECK(build_layout({"p"}, {0}, 7).qubits_per_mode == 3);

    CHECK_THROWS_AS(lay.path_index("z"), LookupError);
    CHECK_THROWS_AS(lay.mode_index(5), LookupError);
    CHECK_THROWS_AS(build_layout({}, {0}, 1), ConfigError);
    CHECK_THROWS_AS(build_layout({"a"}, {}, 1), ConfigError);
    CHECK_THROWS_AS(build_layout({"a"}, {0}, 0), ConfigError);
    CHECK_THROWS_AS(build_layout({"a", "a"}, {0}, 1), ConfigError);
    CHECK_THROWS_AS(build_layout({"a"}, {0, 0}, 1), ConfigError);
}

TEST_CASE("fock state bitstring round trips") {
    SetupLayout lay = build_layout({"a", "b"}, {0, 1}, 3);
    FockState f = make_fock(lay, {{"a", 0, 2}, {"b", 1, 3}});
    CHECK(f.total() == 5);
    // Registers path-major, mode-minor, two bits each, MSB first.
    CHECK(fock_to_bitstring(lay, f) == "10000011");
    CHECK(bitstring_to_fock(lay, "10000011") == f);

    for (int n0 = 0; n0 <= 3; ++n0)
        for (int n1 = 0; n1 <= 3; ++n1) {
            FockState g = make_fock(lay, {{"a", 1, n0}, {"b", 0, n1}});
            CHECK(bitstring_to_fock(lay, fock_to_bitstring(lay, g)) == g);
        }

    CHECK_THROWS_AS(fock_to_bitstring(lay, make_fock(lay, {{"a", 0, 4}})), EncodingError);
    CHECK_THROWS_AS(bitstring_to_fock(lay, "1000001"), EncodingError);
    CHECK_THROWS_AS(bitstring_to_fock(lay, "10x00011"), EncodingError);

    SetupLayout narrow = build_layout({"a"}, {0}, 2);
    CHECK_THROWS_AS(bitstring_to_fock(narrow, "11"), EncodingError);
}

TEST_CASE("fock labels parse and print") {
    SetupLayout lay = build_layout({"a", "b"}, {-1, 0, 1}, 2);
    CHECK(fock_label(lay, vacuum(lay)) == "vacuum");
    FockState f = make_fock(lay, {{"a", -1, 1}, {"b", 1, 2}});
    CHECK(fock_label(lay, f) == "1@(-1,a) 2@(1,b)");
    CHECK(parse_fock(lay, {"1@(-1,a)", "2@(1,b)"}) == f);
    CHECK(parse_fock(lay, {}) == vacuum(lay));
    CHECK_THROWS_AS(parse_fock(lay, {"1@(-1)"}), SchemaError);
    CHECK_THROWS_AS(parse_fock(lay, {"x@(0,a)"}), SchemaError);
    CHECK_THROWS_AS(parse_fock(lay, {"1@(7,a)"}), LookupError);
    CHECK_THROWS_AS(parse_fock(lay, {"3@(0,a)"}), EncodingError);
}

TEST_CASE("pauli product against dense matrices") {
    std::mt19937_64 gen(7);
    auto random_sum = [&](int n_qubits, int n_terms) {
        PauliSum s;
        for (int t = 0; t < n_terms; ++t) {
            PauliTerm term;
            term.coeff = cplx(std::uniform_real_distribution<>(-1, 1)(gen),
                              std::uniform_real_distribution<>(-1, 1)(gen));
            for (int q = 0; q < n_qubits; ++q) {
                int k = int(gen() % 4);
                if (k < 3) term.ops[q] = PauliOp(k);
            }
            s.terms.push_back(term);
        }
        return s;
    };
    for (int rep = 0; rep < 20; ++rep) {
        PauliSum a = random_sum(3, 2), b = random_sum(3, 3);
        Eigen::MatrixXcd ma = to_matrix(a, 3), mb = to_matrix(b, 3);
        CHECK((to_matrix(a * b, 3) - ma * mb).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((to_matrix(a + b, 3) - (ma + mb)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((to_matrix(a - b, 3) - (ma - mb)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((to_matrix(adjoint(a), 3) - ma.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        cplx c(0.3, -0.8);
        CHECK((to_matrix(c * a, 3) - c * ma).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("canonicalize merges and prunes") {
    PauliTerm xy{cplx(1, 0), {{0, PauliOp::X}, {1, PauliOp::Y}}};
    PauliTerm xy2{cplx(-1, 0), {{0, PauliOp::X}, {1, PauliOp::Y}}};
    PauliTerm z{cplx(0.5, 0), {{2, PauliOp::Z}}};
    PauliSum s{xy, z, xy2};
    s.canonicalize();
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].ops == z.ops);
    CHECK(s.is_hermitian());
    CHECK(s.max_qubit() == 2);

    PauliSum ih{PauliTerm{cplx(0, 1), {{0, PauliOp::X}}}};
    CHECK(!ih.canonicalize().is_hermitian());
    CHECK(PauliSum{}.max_qubit() == -1);
}

TEST_CASE("ketbra building blocks") {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Eigen::MatrixXcd m = to_matrix(ketbra_qubit(0, i, j), 1);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    CHECK(std::abs(m(r, c) - cplx(r == i && c == j ? 1 : 0, 0)) < 1e-12);
        }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Eigen::MatrixXcd m = to_matrix(ketbra_binary({0, 1}, a, b), 2);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    CHECK(std::abs(m(r, c) - cplx(r == a && c == b ? 1 : 0, 0)) < 1e-12);
        }
}

TEST_CASE("ladder operators match truncated matrices") {
    for (int cutoff : {1, 3, 7}) {
        SetupLayout lay = build_layout({"p"}, {0}, cutoff);
        int dim = 1 << lay.qubits_per_mode;
        Eigen::MatrixXcd want = dense_creation(cutoff, dim);
        Eigen::MatrixXcd got = to_matrix(creation_operator(lay, "p", 0), lay.total_qubits);
        CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::MatrixXcd a = to_matrix(annihilation_operator(lay, "p", 0), lay.total_qubits);
        CHECK((a - want.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::MatrixXcd n = to_matrix(number_operator(lay, "p", 0), lay.total_qubits);
        Eigen::MatrixXcd nwant = Eigen::MatrixXcd::Zero(dim, dim);
        for (int k = 0; k <= cutoff; ++k) nwant(k, k) = k;
        CHECK((n - nwant).cwiseAbs().maxCoeff() < 1e-12);
        // a+ a = n holds exactly on the truncated space.
        Eigen::MatrixXcd prod =
            to_matrix(creation_operator(lay, "p", 0) * annihilation_operator(lay, "p", 0),
                      lay.total_qubits);
        CHECK((prod - nwant).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("ladder operators at a non-power-of-two cutoff") {
    SetupLayout lay = build_layout({"p"}, {0}, 2);
    Eigen::MatrixXcd got = to_matrix(creation_operator(lay, "p", 0), lay.total_qubits);
    Eigen::MatrixXcd want = dense_creation(2, 4);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
    // The encoded-11 row and column stay exactly zero.
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(got(3, k)) < 1e-12);
        CHECK(std::abs(got(k, 3)) < 1e-12);
    }
}

TEST_CASE("ladder operators land on the right register") {
    SetupLayout lay = build_layout({"a", "b"}, {0, 1}, 1);
    // a+ on (b, 0) is |1><0| on qubit 2: index bit 2^(3-2).
    Eigen::MatrixXcd m = to_matrix(creation_operator(lay, "b", 0), lay.total_qubits);
    FockState from = vacuum(lay);
    FockState to = make_fock(lay, {{"b", 0, 1}});
    auto idx = [&](const FockState& f) {
        std::string bits = fock_to_bitstring(lay, f);
        int v = 0;
        for (char c : bits) v = (v << 1) | (c - '0');
        return v;
    };
    CHECK(std::abs(m(idx(to), idx(from)) - cplx(1, 0)) < 1e-12);
    CHECK(m.cwiseAbs().sum() == doctest::Approx(8.0));  // one unit entry per bystander pattern
}

TEST_CASE("to_matrix guard rails") {
    CHECK_THROWS_AS(to_matrix(PauliSum{}, 13), ResourceError);
    PauliSum far{PauliTerm{cplx(1, 0), {{5, PauliOp::Z}}}};
    CHECK_THROWS_AS(to_matrix(far, 2), ValidationError);
}

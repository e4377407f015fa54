#include <random>

#include "doctest.h"
#include "sl2r/algebra.hpp"
#include "sl2r/error.hpp"

using namespace sl2r;

namespace {

Eigen::VectorXcd unit(int dim, int i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[i] = 1.0;
    return v;
}

Eigen::VectorXcd random_vector(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = cplx(nd(rng), nd(rng));
    return v;
}

// Tr(ad a ad b) summed straight from the structure constants.
cplx brute_killing(const LieAlgebraSpec& alg, int a, int b) {
    cplx s = 0.0;
    for (int c = 0; c < alg.dim(); ++c)
        for (int d = 0; d < alg.dim(); ++d) s -= alg.f(a, d, c) * alg.f(b, c, d);
    return s;
}

}  // namespace

TEST_CASE("sl2 brackets") {
    const auto alg = LieAlgebraSpec::sl2_ladder();
    const Eigen::VectorXcd k0 = unit(3, 0), kp = unit(3, 1), km = unit(3, 2);
    CHECK((bracket(alg, k0, kp) - kp).norm() < 1e-15);
    CHECK((bracket(alg, k0, km) + km).norm() < 1e-15);
    CHECK((bracket(alg, kp, km) + 2.0 * k0).norm() < 1e-15);
    CHECK(bracket(alg, k0, k0).norm() == 0.0);
    CHECK_THROWS_AS(bracket(alg, Eigen::VectorXcd::Zero(2), k0), InvalidInput);
}

TEST_CASE("bracket is bilinear and antisymmetric") {
    std::mt19937_64 rng(21);
    for (const auto& alg : {LieAlgebraSpec::sl2_ladder(), LieAlgebraSpec::sl2_hermitian()})
        for (int t = 0; t < 100; ++t) {
            const auto x = random_vector(rng, 3), x2 = random_vector(rng, 3), y = random_vector(rng, 3);
            const cplx a(0.3, -1.2), b(2.0, 0.5);
            CHECK((bracket(alg, a * x + b * x2, y) - a * bracket(alg, x, y) - b * bracket(alg, x2, y)).norm() <
                  1e-13);
            CHECK((bracket(alg, x, y) + bracket(alg, y, x)).norm() < 1e-13);
        }
}

TEST_CASE("killing form against the adjoint-trace oracle") {
    const auto alg = LieAlgebraSpec::sl2_ladder();
    const auto g = killing_form(alg);
    CHECK(std::abs(g(0, 0) - 2.0) < 1e-14);
    CHECK(std::abs(g(1, 2) + 4.0) < 1e-14);
    CHECK(std::abs(g(2, 1) + 4.0) < 1e-14);
    CHECK(std::abs(g(0, 1)) < 1e-14);
    CHECK(std::abs(g(1, 1)) < 1e-14);
    for (const auto& a : {LieAlgebraSpec::sl2_ladder(), LieAlgebraSpec::sl2_hermitian()}) {
        const auto k = killing_form(a);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(std::abs(k(i, j) - brute_killing(a, i, j)) < 1e-14);
    }
}

TEST_CASE("killing form is invariant") {
    std::mt19937_64 rng(8);
    for (const auto& alg : {LieAlgebraSpec::sl2_ladder(), LieAlgebraSpec::sl2_hermitian()}) {
        const auto g = killing_form(alg);
        for (int t = 0; t < 100; ++t) {
            const auto x = random_vector(rng, 3), y = random_vector(rng, 3), z = random_vector(rng, 3);
            const cplx v = killing_pairing(g, bracket(alg, x, y), z) + killing_pairing(g, y, bracket(alg, x, z));
            CHECK(std::abs(v) < 1e-12);
        }
    }
}

TEST_CASE("split real form signature") {
    const auto s = killing_signature(killing_form(LieAlgebraSpec::sl2_hermitian()));
    CHECK(s.positive == 1);
    CHECK(s.negative == 2);
    CHECK(s.zero == 0);
}

TEST_CASE("jacobi check") {
    CHECK(check_jacobi(LieAlgebraSpec::sl2_ladder()) <= 1e-14);
    CHECK(check_jacobi(LieAlgebraSpec::sl2_hermitian()) <= 1e-14);
    CHECK(check_jacobi(LieAlgebraSpec::abelian(4)) == 0.0);
    const auto alg = LieAlgebraSpec::sl2_hermitian();
    const auto bad = alg.with_entry(0, 1, 2, alg.f(0, 1, 2) + 0.1);
    CHECK(check_jacobi(bad) > 1e-3);
    CHECK(check_antisymmetry(LieAlgebraSpec::sl2_ladder()) == 0.0);
}

TEST_CASE("json round trip") {
    const auto alg = LieAlgebraSpec::sl2_ladder();
    const auto back = lie_algebra_from_json(to_json(alg));
    CHECK(back.names() == alg.names());
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) CHECK(back.f(a, b, c) == alg.f(a, b, c));
    CHECK_THROWS_AS(lie_algebra_from_json(nlohmann::json::parse(R"({"dim": 2, "names": ["a"]})")), InvalidInput);
    CHECK(alg.index_of("K+") == 1);
    CHECK_THROWS_AS(alg.index_of("K9"), InvalidInput);
}

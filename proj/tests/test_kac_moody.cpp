#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "sl2r/error.hpp"
#include "sl2r/kac_moody.hpp"

using namespace sl2r;

namespace {

constexpr int K0 = 0, KP = 1, KM = 2;

const KMContext& ladder_ctx() {
    static const KMContext ctx = KMContext::make(LieAlgebraSpec::sl2_ladder(), {1.3, 0.7}, 12);
    return ctx;
}

KMElement gen(int a, HalfInt n, HalfInt m, int k, cplx c = 1.0) {
    return KMElement::generator(KMGenerator::losert(a, n, m, k), c);
}

KMElement random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> grade(-2, 2), mode(0, 3), gen_index(0, 2);
    std::normal_distribution<double> normal;
    KMElement e;
    for (int i = 0; i < 2; ++i)
        e.add(KMGenerator::losert(gen_index(rng), grade(rng), grade(rng), mode(rng)), cplx(normal(rng), normal(rng)));
    return e;
}

// Three elements with grade-matched terms so the central parts do not vanish.
std::array<KMElement, 3> grade_matched_triple(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> small(-1, 1), mode(0, 2), gen_index(0, 2);
    std::normal_distribution<double> normal;
    const int n1 = small(rng), m1 = small(rng), n2 = small(rng), m2 = small(rng);
    std::array<KMElement, 3> t = {random_element(rng), random_element(rng), random_element(rng)};
    t[0].add(KMGenerator::losert(gen_index(rng), n1, m1, mode(rng)), normal(rng));
    t[1].add(KMGenerator::losert(gen_index(rng), n2, m2, mode(rng)), normal(rng));
    t[2].add(KMGenerator::losert(gen_index(rng), -n1 - n2, -m1 - m2, mode(rng)), normal(rng));
    return t;
}

}  // namespace

TEST_CASE("mode product of Phi(1,1,0) with itself") {
    const auto t = mode_product_losert({1, 1, 0}, {1, 1, 0}, 12);
    CHECK(t.residual < 1e-6);
    for (const auto& [idx, v] : t.entries) {
        CHECK(idx.n == HalfInt(2));
        CHECK(idx.m == HalfInt(2));
        if (idx.k == 0) CHECK(v.real() == doctest::Approx(0.8164965809).epsilon(1e-9));
        else CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("mode product mixing d and d-perp parts") {
    const auto t = mode_product_losert({1, 0, 0}, {1, 1, 1}, 12);
    CHECK(t.residual < 1e-6);
    double k1 = 0, k2 = 0;
    for (const auto& [idx, v] : t.entries) {
        CHECK(idx.n == HalfInt(2));
        CHECK(idx.m == HalfInt(1));
        if (idx.k == 1) k1 = v.real();
        if (idx.k == 2) k2 = v.real();
    }
    CHECK(k1 == doctest::Approx(0.346410161513775).epsilon(1e-9));
    CHECK(k2 == doctest::Approx(0.282842712474619).epsilon(1e-9));
}

TEST_CASE("mode products are symmetric and grade additive") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> grade(-2, 2), mode(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const LosertIndex i{grade(rng), grade(rng), mode(rng)};
        const LosertIndex j{grade(rng), grade(rng), mode(rng)};
        const auto a = mode_product_losert(i, j, 12, 1e300);
        const auto b = mode_product_losert(j, i, 12, 1e300);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t e = 0; e < a.entries.size(); ++e) {
            CHECK(a.entries[e].first.n == i.n + j.n);
            CHECK(a.entries[e].first.m == i.m + j.m);
            CHECK(std::abs(a.entries[e].second - b.entries[e].second) < 1e-12);
        }
        CHECK(a.residual < 1e-6);
    }
}

TEST_CASE("mode product truncation error") {
    CHECK_THROWS_AS(mode_product_losert({1, 1, 2}, {2, 1, 3}, 1, 1e-30), TruncationError);
}

TEST_CASE("Clebsch-Gordan coefficients") {
    const PlancherelMode p1{1, RepLabel::discrete(1, +1), 1};
    CHECK(cg_coefficient(p1, p1, RepLabel::discrete(2, +1)).real() == doctest::Approx(2.0 / std::sqrt(6.0)).epsilon(1e-8));
    CHECK(std::abs(cg_coefficient(p1, p1, RepLabel::discrete(1, +1))) < 1e-8);

    const PlancherelMode p2{-1, RepLabel::discrete(1, -1), -2};
    std::vector<double> xs;
    for (double r : {0.1, 0.3, 0.5, 0.8, 1.2}) xs.push_back(std::cosh(2 * r));
    CHECK(cg_reconstruction_error(p1, p2, ladder_ctx().grid, xs) < 1e-3);

    const double s = ladder_ctx().grid.nodes.front();
    const PlancherelMode c{0, RepLabel::continuous(s, 0), 0};
    CHECK_THROWS_AS(cg_project(c, c, ladder_ctx().grid), Unsupported);
}

TEST_CASE("bracket structure part and central term") {
    const auto& ctx = ladder_ctx();
    const auto z = km_bracket(gen(K0, 1, 1, 0), gen(KP, 1, 0, 0), ctx, Basis::losert);
    CHECK(z.norm() > 0.1);
    for (const auto& [g, v] : z.terms) {
        if (std::abs(v) < 1e-12) continue;
        CHECK(g.a == KP);
        CHECK(g.n() == HalfInt(2));
        CHECK(g.m() == HalfInt(1));
    }

    const auto b = km_bracket(gen(KP, 1, 2, 0), gen(KM, -1, -2, 0), ctx, Basis::losert);
    CHECK(b.c_L.real() == doctest::Approx(1.0 * 1.3 * -4.0).epsilon(1e-10));
    CHECK(b.c_R.real() == doctest::Approx(2.0 * 0.7 * -4.0).epsilon(1e-10));

    const auto x = gen(KP, 1, 2, 1, 0.3) + gen(K0, 0, 1, 0, -1.2);
    CHECK(km_bracket(x, x, ctx, Basis::losert).norm() < 1e-12);

    KMElement mixed = gen(K0, 1, 1, 0);
    mixed.add(KMGenerator::plancherel(K0, 1, RepLabel::discrete(1, +1), 1), 1.0);
    CHECK_THROWS_AS(km_bracket(mixed, x, ctx, Basis::losert), InvalidInput);
}

TEST_CASE("bracket is antisymmetric and bilinear") {
    const auto& ctx = ladder_ctx();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const auto x = random_element(rng), y = random_element(rng), w = random_element(rng);
        CHECK((km_bracket(x, y, ctx, Basis::losert) + km_bracket(y, x, ctx, Basis::losert)).norm() < 1e-10);
        const cplx a(0.4, -1.1);
        const auto lhs = km_bracket(x * a + w, y, ctx, Basis::losert);
        const auto rhs = km_bracket(x, y, ctx, Basis::losert) * a + km_bracket(w, y, ctx, Basis::losert);
        CHECK((lhs - rhs).norm() < 1e-10);
    }
}

TEST_CASE("grading operators") {
    const auto g = KMGenerator::losert(KP, half(3), half(-1), 2);
    CHECK(grading(Op::L0, g) == half(3));
    CHECK(grading(Op::R0, g) == half(-1));
    CHECK_THROWS_AS(grading(Op::Lplus, g), InvalidInput);
}

TEST_CASE("cocycle values") {
    const auto& ctx = ladder_ctx();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const auto x = KMElement::generator(KMGenerator::plancherel(a, 1, RepLabel::discrete(1, +1), 1));
            const auto y = KMElement::generator(KMGenerator::plancherel(b, -1, RepLabel::discrete(1, -1), -1));
            CHECK(std::abs(cocycle_omega(Side::L, x, y, ctx) - 1.3 * ctx.killing(a, b)) < 1e-14);
            CHECK(std::abs(cocycle_omega(Side::L, x, y, ctx) + cocycle_omega(Side::L, y, x, ctx)) < 1e-14);
        }
    // Orthogonal modes pair to zero.
    CHECK(std::abs(cocycle_omega(Side::L, gen(KP, 1, 1, 0), gen(KM, -1, -1, 1), ctx)) < 1e-12);
}

TEST_CASE("cocycle identity and Jacobi identity on random triples") {
    const auto& ctx = ladder_ctx();
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        const auto [x, y, z] = grade_matched_triple(rng);
        CHECK(verify_cocycle(Side::L, x, y, z, ctx, Basis::losert) < 1e-6);
        CHECK(verify_cocycle(Side::R, x, y, z, ctx, Basis::losert) < 1e-6);
        CHECK(jacobi_residual(x, y, z, ctx, Basis::losert) < 1e-5);
        const auto b = km_bracket(x, y, ctx, Basis::losert);
        CHECK(b.c_L == cocycle_omega(Side::L, x, y, ctx));
        CHECK(b.c_R == cocycle_omega(Side::R, x, y, ctx));
    }
}

TEST_CASE("cocycle with a central element vanishes") {
    const auto& ctx = ladder_ctx();
    std::mt19937_64 rng(3);
    KMElement central;
    central.c_L = 2.0;
    central.c_R = -1.0;
    const auto x = random_element(rng), y = random_element(rng);
    CHECK(verify_cocycle(Side::L, x, y, central, ctx, Basis::losert) < 1e-12);

    const auto abelian = KMContext::make(LieAlgebraSpec::abelian(2), {1.0, 1.0}, 12);
    const auto a = gen(0, 1, 0, 0) + gen(1, 0, 1, 1);
    const auto b = gen(1, -1, 0, 0) + gen(0, 0, -1, 1);
    const auto c = gen(0, 0, 0, 0) + gen(1, 1, 1, 0);
    CHECK(verify_cocycle(Side::L, a, b, c, abelian, Basis::losert) == 0.0);
}

TEST_CASE("Losert and Plancherel presentations agree") {
    const auto& ctx = ladder_ctx();
    const auto x = gen(KP, 2, 1, 0, 0.7) + gen(K0, 1, 1, 0, 0.3);
    const auto y = gen(KM, -1, -2, 0, 1.1) + gen(K0, -1, -1, 0, -0.4);
    const auto zl = km_bracket(x, y, ctx, Basis::losert);
    const auto zp = plancherel_to_losert(
        km_bracket(losert_to_plancherel(x, ctx), losert_to_plancherel(y, ctx), ctx, Basis::plancherel), ctx);
    CHECK((zl - zp).norm() < 1e-3);

    const auto w = gen(K0, 1, 0, 2);
    CHECK((plancherel_to_losert(losert_to_plancherel(w, ctx), ctx) - w).norm() < 1e-6);
}

TEST_CASE("root space containment") {
    const auto& ctx = ladder_ctx();
    const auto rd = RootData::sl2_ladder();
    CHECK(rd.is_root({1}));
    CHECK_FALSE(rd.is_root({2}));
    const auto space = root_space(ctx.algebra, rd, {1}, 1, 0, 2);
    REQUIRE(space.size() == 3);
    for (const auto& g : space) {
        CHECK(g.a == KP);
        CHECK(g.n() == HalfInt(1));
        CHECK(g.m() == HalfInt(0));
    }
    CHECK(containment_violation(ctx, rd, {1}, 1, 0, {-1}, 0, 1, 2) < 1e-8);
    CHECK(containment_violation(ctx, rd, {1}, 1, 0, {1}, 0, 1, 2) < 1e-8);
    CHECK(containment_violation(ctx, rd, {0}, 1, 1, {-1}, 0, -1, 2) < 1e-8);
}

TEST_CASE("element JSON export") {
    const auto& ctx = ladder_ctx();
    auto x = gen(KP, 1, 2, 0, cplx(0.5, -0.25));
    x.c_L = 1.5;
    const auto j = to_json(x, ctx.algebra);
    REQUIRE(j["terms"].size() == 1);
    CHECK(j["terms"][0]["generator"] == ctx.algebra.names()[KP]);
    CHECK(j["terms"][0]["k"] == 0);
    CHECK(j["terms"][0]["im"].get<double>() == -0.25);
}

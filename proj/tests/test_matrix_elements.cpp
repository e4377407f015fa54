#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sl2r/error.hpp"
#include "sl2r/matrix_elements.hpp"

using namespace sl2r;

namespace {

const QuadratureRule& rule() {
    static const QuadratureRule r = make_radial_rule(1e12, 32);
    return r;
}

std::vector<GroupPoint> random_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rho(0.05, 3.0), ang(0.0, 2.0 * std::numbers::pi);
    std::vector<GroupPoint> out;
    for (int i = 0; i < count; ++i) {
        const double r = rho(rng), a = ang(rng), b = ang(rng);
        out.push_back(GroupPoint::make(r, a, b));
    }
    return out;
}

GroupFunction op(Op o, const GroupFunction& f) { return apply_operator(o, f, DiffMode::finite_difference); }

}  // namespace

TEST_CASE("su11 matrix") {
    CHECK((su11_matrix(GroupPoint::make(0, 0, 0)) - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
    const auto u = su11_matrix(GroupPoint::make(1.0, std::numbers::pi / 2, 0.0));
    CHECK(std::abs(u(0, 0) - cplx(0.0, std::cosh(1.0))) < 1e-15);
    CHECK(std::abs(u(0, 1) - std::sinh(1.0)) < 1e-15);
    for (const auto& p : random_points(4, 50)) {
        const auto m = su11_matrix(p);
        CHECK(std::abs(std::norm(m(0, 0)) - std::norm(m(0, 1)) - 1.0) < 1e-14 * std::cosh(2 * p.rho));
    }
    CHECK_THROWS_AS(GroupPoint::make(-0.1, 0, 0), InvalidInput);
    CHECK(GroupPoint::make(0.1, -std::numbers::pi / 2, 7.0).phi1 == doctest::Approx(1.5 * std::numbers::pi));
}

TEST_CASE("closed-form matrix elements") {
    for (const auto& p : random_points(1, 20)) {
        const cplx ph1 = std::polar(1.0, 2.0 * p.phi1), ph2 = std::polar(1.0, 4.0 * p.phi1);
        const double c = std::cosh(p.rho);
        CHECK(std::abs(psi(RepLabel::discrete(1, +1), 1, 1)(p) - std::sqrt(2.0) * ph1 / (c * c)) < 1e-14);
        CHECK(std::abs(psi(RepLabel::discrete(2, +1), 2, 2)(p) - std::sqrt(6.0) * ph2 / std::pow(c, 4)) < 1e-13);
    }
    const GroupPoint e = GroupPoint::make(0, 0, 0);
    for (double s : {0.3, 1.0, 2.5})
        for (HalfInt eps : {HalfInt(0), half(1)})
            for (int i = -2; i <= 2; ++i) {
                const HalfInt n = eps + HalfInt(i);
                CHECK(std::abs(psi(RepLabel::continuous(s, eps), n, n)(e) - 1.0) < 1e-13);
                CHECK(std::abs(psi(RepLabel::continuous(s, eps), n, n + HalfInt(1))(e)) < 1e-13);
            }
    CHECK_THROWS_AS(psi(RepLabel::discrete(half(1), +1), half(1), half(1)), NonNormalisable);
    CHECK_THROWS_AS(psi(RepLabel::discrete(1, +1), 0, 1), DomainError);
}

TEST_CASE("swapped indices carry the sign (-1)^{n-m}") {
    for (const auto& L : {RepLabel::discrete(1, +1), RepLabel::discrete(half(3), -1), RepLabel::continuous(1.3, 0)}) {
        const HalfInt b = L.is_discrete() ? L.disc().eta * L.disc().lambda : HalfInt(0);
        const int dir = L.is_discrete() ? L.disc().eta : 1;
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) {
                const HalfInt n = b + HalfInt(dir * a), m = b + HalfInt(dir * c);
                const double sign = ((n - m).twice() / 2) % 2 == 0 ? 1.0 : -1.0;
                for (double x : {1.0, 1.7, 12.0})
                    CHECK(std::abs(psi(L, n, m).radial_at(x) - sign * psi(L, m, n).radial_at(x)) < 1e-13);
            }
    }
}

TEST_CASE("scalar products") {
    const auto a = psi(RepLabel::discrete(1, +1), 1, 1);
    CHECK(std::abs(scalar_product(a, a, rule()) - 1.0) < 1e-12);
    CHECK(std::abs(scalar_product(a, psi(RepLabel::discrete(1, +1), 2, 1), rule())) == 0.0);
    CHECK(scalar_product(a, psi(RepLabel::discrete(half(3), +1), half(3), half(3)), rule()) == cplx(0.0));
    const auto c = psi(RepLabel::continuous(1.0, 0), 0, 0);
    CHECK_THROWS_AS(scalar_product(c, c, rule()), NonNormalisable);
}

TEST_CASE("discrete orthonormality across labels") {
    for (int eta : {+1, -1})
        for (HalfInt cls : {HalfInt(0), half(1)}) {
            std::vector<GroupFunction> fs;
            for (HalfInt l = cls + HalfInt(1); l <= HalfInt(2); l += HalfInt(1)) {
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        fs.push_back(psi(RepLabel::discrete(l, eta), eta * (l + HalfInt(i)), eta * (l + HalfInt(j))));
            }
            double worst = 0.0;
            for (std::size_t i = 0; i < fs.size(); ++i)
                for (std::size_t j = 0; j < fs.size(); ++j)
                    worst = std::max(worst, std::abs(scalar_product(fs[i], fs[j], rule()) - (i == j ? 1.0 : 0.0)));
            CHECK(worst < 1e-8);
        }
}

TEST_CASE("operator examples") {
    const auto L = RepLabel::discrete(1, +1);
    const auto f12 = psi(L, 1, 2), f11 = psi(L, 1, 1);
    for (const auto& p : random_points(2, 20)) {
        CHECK(std::abs(apply_operator(Op::L0, f12, DiffMode::analytic)(p) - f12(p)) < 1e-14);
        CHECK(std::abs(op(Op::Casimir, f11)(p)) < 1e-6);
        CHECK(std::abs(apply_operator(Op::Lminus, psi(L, 1, 3), DiffMode::analytic)(p)) < 1e-8);
    }
    // ρ = 0 is handled by one-sided stencils / analytic limits
    const GroupPoint o = GroupPoint::make(0.0, 0.2, 0.3);
    CHECK(std::abs(op(Op::Casimir, f11)(o)) < 1e-6);
    CHECK(std::isfinite(std::abs(apply_operator(Op::Lplus, f11, DiffMode::analytic)(o))));
    const GroupFunction g(1, 1, std::make_shared<FunctionProfile>([](double x) { return cplx(1.0 / (x * x)); }), 4.0);
    CHECK_THROWS_AS(apply_operator(Op::Lplus, g, DiffMode::analytic)(o), Unsupported);
    CHECK_NOTHROW(apply_operator(Op::Lplus, g, DiffMode::finite_difference)(GroupPoint::make(0.4, 0, 0)));
}

TEST_CASE("operator commutators by finite differences") {
    const std::vector<GroupFunction> fs = {psi(RepLabel::discrete(half(3), +1), half(5), half(3)),
                                           psi(RepLabel::continuous(0.7, 0), 0, 1),
                                           psi(RepLabel::discrete(2, -1), -2, -3)};
    for (const auto& f : fs)
        for (const auto& p : random_points(9, 8)) {
            const double s = std::max(1e-3, std::abs(f(p)));
            CHECK(std::abs(op(Op::L0, op(Op::Lplus, f))(p) - op(Op::Lplus, op(Op::L0, f))(p) -
                           op(Op::Lplus, f)(p)) < 1e-5);
            CHECK(std::abs(op(Op::Lplus, op(Op::Lminus, f))(p) - op(Op::Lminus, op(Op::Lplus, f))(p) +
                           2.0 * op(Op::L0, f)(p)) < 1e-5 * s * 10);
            CHECK(std::abs(op(Op::Rplus, op(Op::Rminus, f))(p) - op(Op::Rminus, op(Op::Rplus, f))(p) +
                           2.0 * op(Op::R0, f)(p)) < 1e-5 * s * 10);
            CHECK(std::abs(op(Op::Lplus, op(Op::Rminus, f))(p) - op(Op::Rminus, op(Op::Lplus, f))(p)) < 1e-5);
            CHECK(std::abs(op(Op::Lminus, op(Op::Rplus, f))(p) - op(Op::Rplus, op(Op::Lminus, f))(p)) < 1e-5);
        }
}

TEST_CASE("eigen and ladder properties on random elements") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> l2(2, 6), off(0, 3), eta(0, 1);
    std::uniform_real_distribution<double> sig(0.1, 3.0);
    for (int t = 0; t < 12; ++t) {
        RepLabel L = RepLabel::discrete(1, +1);
        HalfInt n, m;
        if (t % 3 == 2) {
            const HalfInt eps = eta(rng) ? half(1) : HalfInt(0);
            L = RepLabel::continuous(sig(rng), eps);
            n = eps + HalfInt(off(rng) - 1);
            m = eps + HalfInt(off(rng) - 1);
        } else {
            const int e = eta(rng) ? 1 : -1;
            const HalfInt l = HalfInt::from_twice(l2(rng));
            L = RepLabel::discrete(l, e);
            n = e * (l + HalfInt(off(rng)));
            m = e * (l + HalfInt(off(rng)));
        }
        const auto f = psi(L, n, m);
        const auto q = op(Op::Casimir, f);
        for (const auto& p : random_points(100 + t, 10)) {
            INFO(L.str() << " " << n.str() << "," << m.str());
            CHECK(std::abs(q(p) - casimir_eigenvalue(L) * f(p)) < 1e-6 * std::max(1.0, std::abs(f(p))));
            for (Op o : {Op::Lplus, Op::Lminus, Op::Rplus, Op::Rminus}) {
                const auto [dn, dm] = op_shift(o);
                const HalfInt idx = dn != 0 ? n : m;
                const double c = ladder_coeff(L, idx, dn != 0 ? dn : dm);
                const cplx expect = c == 0.0 ? cplx(0.0) : c * psi(L, n + HalfInt(dn), m + HalfInt(dm))(p);
                CHECK(std::abs(apply_operator(o, f, DiffMode::analytic)(p) - expect) < 1e-7);
            }
        }
    }
}

TEST_CASE("decay exponents and truncated norms") {
    CHECK(psi(RepLabel::discrete(2, +1), 3, 2).decay_spread() < 1.5);
    CHECK(psi(RepLabel::continuous(1.0, 0), 0, 0).decay_spread() < 10.0);
    // The continuous element is not normalisable: the truncated norm keeps
    // growing, roughly like ln x_max.
    const auto c = psi(RepLabel::continuous(1.0, 0), 0, 0);
    const double n2 = truncated_norm(c, 1e2), n4 = truncated_norm(c, 1e4), n6 = truncated_norm(c, 1e6);
    CHECK(n4 > n2);
    CHECK(n6 - n4 > 0.5 * (n4 - n2));
    const auto d = psi(RepLabel::discrete(1, +1), 1, 1);
    CHECK(truncated_norm(d, 1e6) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("tabulation") {
    const auto rows = tabulate_psi({RepLabel::discrete(1, +1)}, {0, 1, 2}, {1}, {GroupPoint::make(0.5, 0, 0)});
    CHECK(rows.size() == 2);
    std::ostringstream os;
    write_csv(os, rows);
    CHECK(os.str().rfind("label,n,m,rho,phi1,phi2,re,im\n", 0) == 0);
    CHECK(to_json(rows).size() == 2);
    CHECK(parse_op("R-") == Op::Rminus);
    CHECK_THROWS_AS(parse_op("X"), InvalidInput);
}

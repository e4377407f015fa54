#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sl2r/error.hpp"
#include "sl2r/specfun.hpp"

using namespace sl2r;

TEST_CASE("jacobi_poly examples") {
    CHECK(jacobi_poly(0, 0.0, -2.0, 0.3) == doctest::Approx(1.0));
    CHECK(jacobi_poly(1, 2.0, 3.0, 0.5) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(jacobi_poly(2, 0.0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // P_1^{(0,-3)}(x) = (3-x)/2
    CHECK(jacobi_poly(1, 0.0, -3.0, 3.0) == doctest::Approx(0.0));
    CHECK(jacobi_poly(1, 0.0, -3.0, 7.0) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(jacobi_poly(-1, 0.0, 0.0, 0.0), InvalidInput);
}

namespace {

// Finite hypergeometric sum in long double, with the sum of |terms| as scale.
std::pair<long double, long double> jacobi_oracle(int k, long double a, long double b, long double x) {
    auto binom = [](long double r, int j) {
        long double v = 1.0L;
        for (int i = 0; i < j; ++i) v *= (r - i) / (i + 1);
        return v;
    };
    long double sum = 0.0L, scale = 0.0L;
    for (int s = 0; s <= k; ++s) {
        const long double t =
            binom(k + a, s) * binom(k + b, k - s) * std::pow((x - 1) / 2, k - s) * std::pow((x + 1) / 2, s);
        sum += t;
        scale += std::fabs(t);
    }
    return {sum, scale};
}

}  // namespace

TEST_CASE("jacobi_poly agrees with the finite-sum oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> kd(0, 20), ab(-8, 8);
    std::uniform_real_distribution<double> xd(1.0, 50.0);
    for (int trial = 0; trial < 4000; ++trial) {
        const int k = kd(rng);
        const double a = ab(rng), b = ab(rng), x = xd(rng);
        const auto [s, scale] = jacobi_oracle(k, a, b, x);
        INFO("k=" << k << " a=" << a << " b=" << b << " x=" << x);
        CHECK(std::abs(jacobi_poly(k, a, b, x) - static_cast<double>(s)) <= 1e-11 * static_cast<double>(scale));
        CHECK(std::abs(jacobi_poly_sum(k, a, b, x) - static_cast<double>(s)) <= 1e-11 * static_cast<double>(scale));
    }
    // non-integer parameters exercise the recurrence
    std::uniform_real_distribution<double> abr(-0.9, 8.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int k = kd(rng);
        const double a = abr(rng), b = abr(rng), x = xd(rng);
        const auto [s, scale] = jacobi_oracle(k, a, b, x);
        INFO("k=" << k << " a=" << a << " b=" << b << " x=" << x);
        CHECK(std::abs(jacobi_poly(k, a, b, x) - static_cast<double>(s)) <= 1e-11 * static_cast<double>(scale));
    }
}

TEST_CASE("jacobi orthogonality on [-1,1]") {
    // x = cos θ makes (1-x)^a (1+x)^b dx smooth for a, b >= -1/2.
    const GaussRule g = gauss_legendre(64, 0.0, std::numbers::pi);
    for (double a : {0.0, 0.5, 2.0, -0.5})
        for (double b : {-0.5, 1.0, 3.0, 1.5}) {
            double worst = 0.0;
            for (int i = 0; i <= 10; ++i)
                for (int j = 0; j < i; ++j) {
                    double s = 0.0;
                    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
                        const double th = g.nodes[q], x = std::cos(th);
                        const double w = std::pow(2.0 * std::pow(std::sin(th / 2), 2), a) *
                                         std::pow(2.0 * std::pow(std::cos(th / 2), 2), b) * std::sin(th);
                        s += g.weights[q] * w * jacobi_poly(i, a, b, x) * jacobi_poly(j, a, b, x);
                    }
                    worst = std::max(worst, std::abs(s));
                }
            CHECK(worst < 1e-10);
        }
}

TEST_CASE("hyp2f1 examples") {
    CHECK(std::abs(hyp2f1(0.3, cplx(1.2, 0.4), 2.5, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(hyp2f1(1.0, 1.0, 2.0, -1.0) - std::log(2.0)) < 1e-13);
    CHECK(std::abs(hyp2f1(-1.0, 2.0, 3.0, -1.0) - 5.0 / 3.0) < 1e-14);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, -1.0, -0.5), PoleError);
    // terminates before the pole in γ
    CHECK_NOTHROW(hyp2f1(-1.0, 0.5, -2.0, -0.5));
}

TEST_CASE("hyp2f1 contiguous relation in gamma") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> p(0.2, 3.0), im(-2.0, 2.0), zd(-6.0, -0.01);
    for (int t = 0; t < 300; ++t) {
        const cplx a(p(rng), im(rng)), b(p(rng), im(rng));
        const cplx c(p(rng) + 1.5, im(rng));
        const double z = zd(rng);
        const cplx fm = hyp2f1(a, b, c - 1.0, z), f0 = hyp2f1(a, b, c, z), fp = hyp2f1(a, b, c + 1.0, z);
        const cplx t1 = c * (c - 1.0) * (z - 1.0) * fm;
        const cplx t2 = c * (c - 1.0 - (2.0 * c - a - b - 1.0) * z) * f0;
        const cplx t3 = (c - a) * (c - b) * z * fp;
        const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
        CHECK(std::abs(t1 + t2 + t3) <= 1e-9 * scale);
    }
}

TEST_CASE("log_gamma") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-14);
    CHECK(log_gamma(0.5).real() == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-13));
    const double g2 = std::exp(2.0 * log_gamma(cplx(0.5, 1.0)).real());
    CHECK(g2 == doctest::Approx(std::numbers::pi / std::cosh(std::numbers::pi)).epsilon(1e-12));
    CHECK_THROWS_AS(log_gamma(0.0), PoleError);
    CHECK_THROWS_AS(log_gamma(-3.0), PoleError);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(-19.5, 39.5), im(-50.0, 50.0);
    for (int t = 0; t < 1000; ++t) {
        const cplx z(re(rng), im(rng));
        const cplx d = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
        CHECK(std::abs(d.real()) < 1e-12 * std::max(1.0, std::abs(log_gamma(z).real())));
        const double turns = d.imag() / (2.0 * std::numbers::pi);
        CHECK(std::abs(turns - std::round(turns)) < 1e-9);
    }
}

TEST_CASE("quadrature rules") {
    const auto rule = make_radial_rule(1e3, 64);
    const auto r = rule.integrate([](double x) { return cplx(1.0 / ((x + 1) * (x + 1))); }, 2.0);
    CHECK(std::abs(r.value.real() - 0.5) < 1e-8);

    const auto unit = make_interval_rule(1.0, 3.0, 8);
    CHECK(unit.integrate([](double) { return cplx(1.0); }).value.real() == doctest::Approx(2.0).epsilon(1e-15));
    double wsum = 0.0;
    for (double w : unit.weights()) {
        CHECK(w > 0.0);
        wsum += w;
    }
    CHECK(std::abs(wsum - 2.0) < 1e-13);

    const auto far = make_radial_rule(1e8, 32);
    const auto q = far.integrate([](double x) { return cplx(std::pow(x + 1, -4) * (3 - x) * (3 - x)); }, 2.0);
    CHECK(std::abs(q.value.real() - 1.0 / 6.0) < 1e-10);

    // degree-15 polynomial on an 8-point panel
    const auto p = make_interval_rule(-1.0, 2.0, 8);
    const double exact = (std::pow(2.0, 16) - 1.0) / 16.0;
    CHECK(std::abs(p.integrate([](double x) { return cplx(std::pow(x, 15)); }).value.real() - exact) <
          1e-12 * exact);
}

#include <cmath>

#include "doctest.h"
#include "sl2r/error.hpp"
#include "sl2r/reps.hpp"

using namespace sl2r;

TEST_CASE("half integers") {
    CHECK(HalfInt::parse("3/2") == half(3));
    CHECK(HalfInt::parse("-2") == HalfInt(-2));
    CHECK(HalfInt::parse("-0.5") == half(-1));
    CHECK(half(3).str() == "3/2");
    CHECK_THROWS_AS(HalfInt::parse("1/3"), InvalidInput);
    CHECK_THROWS_AS(HalfInt::parse("x"), InvalidInput);
    CHECK(same_class(half(1), half(-3)));
    CHECK(!same_class(HalfInt(1), half(1)));
}

TEST_CASE("casimir eigenvalues") {
    CHECK(casimir_eigenvalue(RepLabel::discrete(1, +1)) == 0.0);
    CHECK(casimir_eigenvalue(RepLabel::discrete(half(3), -1)) == doctest::Approx(0.75));
    CHECK(casimir_eigenvalue(RepLabel::continuous(1.0, 0)) == doctest::Approx(-1.25));
}

TEST_CASE("weight supports") {
    CHECK(weight_support(RepLabel::discrete(1, +1), 1));
    CHECK(!weight_support(RepLabel::discrete(1, +1), 0));
    CHECK(weight_support(RepLabel::discrete(half(3), -1), half(-3)));
    CHECK(!weight_support(RepLabel::discrete(half(3), -1), half(-1)));
    CHECK(!weight_support(RepLabel::continuous(2.0, half(1)), 0));
    CHECK(weight_support(RepLabel::continuous(2.0, half(1)), half(-7)));
}

TEST_CASE("ladder coefficients") {
    const auto d = RepLabel::discrete(1, +1);
    CHECK(ladder_coeff(d, 1, +1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(ladder_coeff(d, 1, -1) == 0.0);
    CHECK_THROWS_AS(ladder_coeff(d, 0, +1), DomainError);
    CHECK(ladder_coeff(RepLabel::discrete(half(3), -1), half(-3), +1) == 0.0);
    CHECK(ladder_coeff(RepLabel::discrete(2, -1), -3, +1) < 0.0);
    // full-σ convention: √((n+½)² + σ²)
    CHECK(ladder_coeff(RepLabel::continuous(2.0, 0), 0, +1) == doctest::Approx(std::sqrt(17.0) / 2.0));
}

TEST_CASE("ladder and casimir consistency") {
    std::vector<RepLabel> labels = {RepLabel::discrete(1, +1),          RepLabel::discrete(half(3), +1),
                                    RepLabel::discrete(2, -1),          RepLabel::discrete(half(5), -1),
                                    RepLabel::continuous(0.3, 0),       RepLabel::continuous(1.7, half(1)),
                                    RepLabel::continuous(5.0, 0)};
    for (const auto& L : labels) {
        const double q = casimir_eigenvalue(L);
        HalfInt start = L.is_discrete() ? L.disc().eta * L.disc().lambda : L.parity() - HalfInt(6);
        for (int i = 0; i < 12; ++i) {
            const HalfInt n = L.is_discrete() ? start + HalfInt(L.disc().eta * i) : start + HalfInt(i);
            auto c = [&](HalfInt w, int dir) { return weight_support(L, w) ? ladder_coeff(L, w, dir) : 0.0; };
            const double x = n.value();
            // K+K- and K-K+ on |n>
            const double pm = c(n, -1) * c(n - HalfInt(1), +1);
            const double mp = c(n, +1) * c(n + HalfInt(1), -1);
            INFO(L.str() << " n=" << n.str());
            CHECK(std::abs(x * x - 0.5 * (pm + mp) - q) < 1e-12 * std::max(1.0, std::abs(q)));
        }
    }
}

TEST_CASE("unitarity and labels") {
    CHECK(is_unitary(RepLabel::discrete(1, +1)));
    CHECK(!is_unitary(RepLabel::discrete(half(1), +1)));
    CHECK(is_unitary(RepLabel::continuous(0.3, 0)));
    CHECK_THROWS_AS(RepLabel::continuous(-1.0, 0), InvalidInput);
    CHECK_THROWS_AS(RepLabel::continuous(1.0, half(3)), InvalidInput);
    CHECK_THROWS_AS(RepLabel::discrete(0, +1), InvalidInput);
    CHECK_THROWS_AS(RepLabel::parse("discrete:1:*"), InvalidInput);
    CHECK(RepLabel::parse("discrete:3/2:-") == RepLabel::discrete(half(3), -1));
    CHECK(RepLabel::parse("continuous:0.5:1/2") == RepLabel::continuous(0.5, half(1)));
    for (const auto& L : {RepLabel::discrete(half(3), -1), RepLabel::continuous(0.5, half(1))}) {
        CHECK(replabel_from_json(to_json(L)) == L);
        CHECK(RepLabel::parse(L.str()) == L);
    }
    CHECK(to_json(RepLabel::discrete(1, +1)).dump() == R"({"eta":"+","lambda":1.0,"type":"discrete"})");
}

#include <random>

#include "doctest.h"
#include "sl2r/error.hpp"
#include "sl2r/kernels.hpp"
#include "sl2r/losert.hpp"
#include "sl2r/matrix_elements.hpp"

using namespace sl2r;

namespace {

std::vector<GroupFunction> family() {
    std::vector<GroupFunction> fs;
    for (int k = 0; k < 9; ++k) fs.push_back(phi(2, 1, k));
    fs.push_back(psi(RepLabel::discrete(1, +1), 2, 1));
    fs.push_back(psi(RepLabel::discrete(2, +1), 2, 2));
    return fs;
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
    const auto fs = family();
    const auto& rule = losert_rule();
    const SampledSet s = sample_functions(fs, rule, Exec::serial);
    const SampledSet p = sample_functions(fs, rule, Exec::parallel);
    CHECK(s.values == p.values);
    CHECK(s.end == p.end);

    CHECK(radial_gram(s, s, rule, Exec::serial) == radial_gram(s, s, rule, Exec::parallel));
    CHECK(gram(fs, fs, rule, Exec::serial) == gram(fs, fs, rule, Exec::parallel));

    std::mt19937_64 rng(2);
    std::normal_distribution<double> nd;
    Eigen::VectorXcd c(fs.size());
    for (auto& v : c) v = cplx(nd(rng), nd(rng));
    CHECK(combine_columns(s.values, c, Exec::serial) == combine_columns(s.values, c, Exec::parallel));

    std::vector<ProfilePtr> profs;
    for (const auto& f : fs) profs.push_back(f.radial_ptr());
    const std::vector<double> xs = {1.0, 1.5, 3.0, 40.0, 1e5};
    const auto es = evaluate_profiles(profs, xs, Exec::serial);
    CHECK(es == evaluate_profiles(profs, xs, Exec::parallel));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < fs.size(); ++j) CHECK(es(i, j) == fs[j].radial_at(xs[i]));
    CHECK(kernel_threads() >= 1);
}

TEST_CASE("radial gram matches scalar_product") {
    const auto fs = family();
    const auto& rule = losert_rule();
    const auto g = gram(fs, fs, rule, Exec::parallel);
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j < fs.size(); ++j)
            CHECK(std::abs(g(i, j) - scalar_product(fs[i], fs[j], rule)) < 1e-13);
    // entries across sectors vanish
    const std::vector<GroupFunction> other = {phi(1, 1, 0)};
    CHECK(gram(fs, other, rule, Exec::serial).norm() == 0.0);
}

TEST_CASE("kernel errors") {
    const auto c = psi(RepLabel::continuous(1.0, 0), 0, 0);
    const auto& rule = losert_rule();
    const SampledSet s = sample_functions({c}, rule, Exec::parallel);
    CHECK_THROWS_AS(radial_gram(s, s, rule, Exec::parallel), NonNormalisable);
    CHECK_THROWS_AS(radial_gram(s, s, rule, Exec::serial), NonNormalisable);
    // exceptions raised inside the parallel region reach the caller
    const GroupFunction bad(0, 0, std::make_shared<FunctionProfile>([](double x) -> cplx {
                                if (x > 100.0) throw DomainError("boom");
                                return 1.0 / (x * x);
                            }),
                            4.0);
    CHECK_THROWS_AS(sample_functions({bad, bad}, rule, Exec::parallel), DomainError);
}

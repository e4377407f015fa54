#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl2r/halfint.hpp"
#include "sl2r/reps.hpp"

namespace sl2r {

struct Check {
    std::string name;
    double value;
    double tolerance;
    bool pass() const;
};

/// Numeric knobs shared by the verification suites. Unset tolerances fall
/// back to each suite's default.
struct VerifyConfig {
    HalfInt lambda_max = 2;
    double sigma_max = 12.0;
    int quad_order = 32;
    double x_max = 1e10;
    int k_max = 6;
    std::pair<HalfInt, HalfInt> n_range{-4, 4};
    std::pair<HalfInt, HalfInt> m_range{-4, 4};
    std::optional<double> tol;
    double k_L = 1.0, k_R = 1.0;
    std::uint64_t seed = 1;
    std::optional<RepLabel> rep;
};

/// Discrete-series Gram matrices, λ <= λ_max, both η, weights within 3 of the edge.
std::vector<Check> verify_orthonormality(const VerifyConfig& cfg);
/// L0, R0 (exact) and finite-difference Q eigen-residuals at 20 random points.
std::vector<Check> verify_eigen(const VerifyConfig& cfg);
/// Analytic L±, R± against ladder_coeff × shifted matrix element.
std::vector<Check> verify_ladder(const VerifyConfig& cfg);
/// Losert Gram matrices over the n/m ranges, k <= k_max.
std::vector<Check> verify_gram(const VerifyConfig& cfg);
/// Finite-algebra and Kac-Moody Jacobi identities.
std::vector<Check> verify_jacobi(const VerifyConfig& cfg);
/// Cocycle identity, antisymmetry and central-term consistency.
std::vector<Check> verify_cocycle_suite(const VerifyConfig& cfg);
/// Plancherel round trips and Parseval identities.
std::vector<Check> verify_parseval(const VerifyConfig& cfg);

/// Suite by name: orthonormality, eigen, ladder, gram, jacobi, cocycle, parseval.
std::vector<Check> run_suite(const std::string& name, const VerifyConfig& cfg);
const std::vector<std::string>& suite_names();

nlohmann::ordered_json checks_to_json(const std::vector<Check>& checks);
bool all_pass(const std::vector<Check>& checks);

}  // namespace sl2r

#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "sl2r/halfint.hpp"

namespace sl2r {

struct DiscreteLabel {
    HalfInt lambda;
    int eta = +1;  // +1 bounded below, -1 bounded above
    friend bool operator==(const DiscreteLabel&, const DiscreteLabel&) = default;
};

struct ContinuousLabel {
    double sigma = 0.0;
    HalfInt eps;  // 0 or 1/2
    friend bool operator==(const ContinuousLabel&, const ContinuousLabel&) = default;
};

/// Λ: discrete (λ, η) or principal continuous (σ, ε).
class RepLabel {
public:
    static RepLabel discrete(HalfInt lambda, int eta);
    static RepLabel continuous(double sigma, HalfInt eps);
    /// "discrete:1:+", "discrete:3/2:-", "continuous:2:0", "continuous:0.5:1/2".
    static RepLabel parse(const std::string& s);

    bool is_discrete() const { return std::holds_alternative<DiscreteLabel>(v_); }
    bool is_continuous() const { return !is_discrete(); }
    const DiscreteLabel& disc() const;
    const ContinuousLabel& cont() const;
    /// Class of the weights: 0 for integer weights, 1/2 for half-integer.
    HalfInt parity() const;

    std::string str() const;
    friend bool operator==(const RepLabel&, const RepLabel&) = default;

private:
    explicit RepLabel(std::variant<DiscreteLabel, ContinuousLabel> v) : v_(v) {}
    std::variant<DiscreteLabel, ContinuousLabel> v_;
};

double casimir_eigenvalue(const RepLabel& L);
bool weight_support(const RepLabel& L, HalfInt n);
/// c with K_dir|Λ,n> = c|Λ,n+dir>. D⁻ keeps the negative printed sign.
double ladder_coeff(const RepLabel& L, HalfInt n, int dir);
bool is_unitary(const RepLabel& L);

nlohmann::json to_json(const RepLabel& L);
RepLabel replabel_from_json(const nlohmann::json& j);

}  // namespace sl2r

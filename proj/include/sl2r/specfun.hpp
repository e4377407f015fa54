#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace sl2r {

using cplx = std::complex<double>;

/// Jacobi polynomial P_k^{(a,b)}(x) by the three-term recurrence in k.
/// Negative integer parameters, and a vanishing leading recurrence
/// coefficient, go through the finite sum instead.
double jacobi_poly(int k, double a, double b, double x);

/// Finite-sum form Σ_s binom(k+a,s) binom(k+b,k-s) ((x-1)/2)^{k-s} ((x+1)/2)^s.
double jacobi_poly_sum(int k, double a, double b, double x);

/// Generalised binomial r(r-1)...(r-j+1)/j!.
double gen_binomial(double r, int j);

/// Principal-strip log Γ(z) (Lanczos, reflection for Re z < 1/2).
/// The imaginary part is only defined modulo 2π.
cplx log_gamma(cplx z);

/// 1/Γ(z), exactly zero at the poles.
cplx recip_gamma(cplx z);

/// ₂F₁(a,b;c;w) on 0 <= w < 1 with the connection coefficients for the
/// w -> 1 formula precomputed. Both w and 1-w are passed so that callers
/// can supply an accurate complement near w = 1.
class Hyp2F1 {
public:
    Hyp2F1(cplx a, cplx b, cplx c);

    cplx operator()(double w, double wc) const;
    cplx operator()(double w) const { return (*this)(w, 1.0 - w); }

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }

private:
    cplx series(double w) const;

    cplx a_, b_, c_;
    int terminating_ = -1;  // degree if a or b is a non-positive integer
    bool use_connection_ = false;
    cplx s_{};              // c - a - b
    cplx coef_a_{}, coef_b_{};
};

/// ₂F₁(α,β;γ;z) for real z <= 0, through the Pfaff transformation onto [0,1).
cplx hyp2f1(cplx alpha, cplx beta, cplx gamma, double z);

/// Plain Gauss series Σ (a)_k (b)_k / ((c)_k k!) w^k with |w| < 1.
/// Throws AccuracyError if the tail does not drop below the target.
cplx hyp2f1_series(cplx a, cplx b, cplx c, double w, int max_terms = 100000);

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss–Legendre rule mapped to [a,b].
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Composite Gauss–Legendre rule over an interval or over [1, x_max] standing
/// in for [1, ∞).
class QuadratureRule {
public:
    QuadratureRule(std::vector<double> nodes, std::vector<double> weights, double lower,
                   double upper, bool half_line, int degree, double target);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    bool half_line() const { return half_line_; }
    int degree() const { return degree_; }
    double target_accuracy() const { return target_; }

    struct Result {
        cplx value;
        double tail;  // estimated contribution of (upper, ∞)
    };

    /// Quadrature sum; for half-line rules a tail C(x+1)^{-p} fitted at
    /// x_max is added, p being the caller's algebraic decay exponent.
    Result integrate(const std::function<cplx(double)>& f, double decay = 0.0) const;
    /// Tail estimate f(x_max)(x_max+1)/(p-1) from a sampled end value.
    double tail_estimate(cplx f_at_upper, double decay) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double lower_, upper_;
    bool half_line_;
    int degree_;
    double target_;
};

/// Panels on [1, x_max] doubling in x+1 with `order` Gauss points each.
QuadratureRule make_radial_rule(double x_max, int order);

/// `panels` equal Gauss–Legendre panels on [a,b].
QuadratureRule make_interval_rule(double a, double b, int order, int panels = 1);

}  // namespace sl2r

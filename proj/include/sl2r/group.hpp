#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sl2r/halfint.hpp"
#include "sl2r/specfun.hpp"

namespace sl2r {

struct GroupPoint {
    double rho = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;

    /// Validates ρ >= 0 and reduces the angles to [0, 2π).
    static GroupPoint make(double rho, double phi1, double phi2);
    double x() const { return std::cosh(2.0 * rho); }
};

/// U = [[z1, z2], [conj z2, conj z1]] with z1 = cosh ρ e^{iφ1}, z2 = sinh ρ e^{iφ2}.
Eigen::Matrix2cd su11_matrix(const GroupPoint& p);

/// ρ-derivatives of a radial profile together with the two combinations that
/// are singular at ρ = 0 when computed naively.
struct RadialJet {
    cplx f{}, df{}, d2f{};
    cplx coth_f{};        // coth ρ · f
    cplx f_over_sinh2{};  // f / sinh² ρ
};

/// Radial part g(x), x = cosh 2ρ, of a function in a weight sector.
class RadialProfile {
public:
    virtual ~RadialProfile() = default;
    virtual cplx operator()(double x) const = 0;
    virtual bool has_jet() const { return false; }
    /// Analytic derivative data at ρ; throws Unsupported if unavailable.
    virtual RadialJet jet(double rho) const;
};

using ProfilePtr = std::shared_ptr<const RadialProfile>;

/// coef · tanh^d ρ · cosh^{-2s} ρ · Q(tanh² ρ) where Q is either a Jacobi
/// polynomial P_k^{(α,β)}(1-2w) or a Gauss series ₂F₁(a,b;c;w).
/// Covers every closed-form matrix element and Losert radial function.
class ClosedFormProfile final : public RadialProfile {
public:
    struct Jacobi {
        int k;
        double alpha, beta;
    };
    struct Gauss {
        cplx a, b, c;
    };

    ClosedFormProfile(cplx coef, int d, cplx s, Jacobi poly, bool real_part = false);
    ClosedFormProfile(cplx coef, int d, cplx s, Gauss series, bool real_part = false);

    cplx operator()(double x) const override;
    bool has_jet() const override { return true; }
    RadialJet jet(double rho) const override;

    int power() const { return d_; }
    cplx exponent() const { return s_; }
    cplx coef() const { return coef_; }

private:
    // Q, dQ/dw, d²Q/dw² at (w, 1-w).
    void factor(double w, double wc, cplx& q, cplx* dq, cplx* d2q) const;

    cplx coef_;
    int d_;
    cplx s_;
    bool real_part_;
    std::optional<Jacobi> jacobi_;
    std::vector<Hyp2F1> gauss_;  // F, F' and F'' series
};

/// Profile given by an arbitrary callable, without derivative data.
class FunctionProfile final : public RadialProfile {
public:
    explicit FunctionProfile(std::function<cplx(double)> g) : g_(std::move(g)) {}
    cplx operator()(double x) const override { return g_(x); }

private:
    std::function<cplx(double)> g_;
};

/// Σ c_i g_i; has a jet when every term has one.
class CombinationProfile final : public RadialProfile {
public:
    CombinationProfile(std::vector<cplx> coefs, std::vector<ProfilePtr> terms);
    cplx operator()(double x) const override;
    bool has_jet() const override;
    RadialJet jet(double rho) const override;

private:
    std::vector<cplx> coefs_;
    std::vector<ProfilePtr> terms_;
};

/// Pointwise product g_1 g_2.
class ProductProfile final : public RadialProfile {
public:
    ProductProfile(ProfilePtr a, ProfilePtr b) : a_(std::move(a)), b_(std::move(b)) {}
    cplx operator()(double x) const override { return (*a_)(x) * (*b_)(x); }

private:
    ProfilePtr a_, b_;
};

/// f(ρ,φ1,φ2) = e^{i(m+n)φ1 + i(m-n)φ2} g(cosh 2ρ): L0-grade n, R0-grade m.
class GroupFunction {
public:
    GroupFunction(HalfInt n, HalfInt m, ProfilePtr radial, double decay);

    HalfInt n() const { return n_; }
    HalfInt m() const { return m_; }
    /// |g(x)| <= C x^{-decay/2}.
    double decay() const { return decay_; }
    const RadialProfile& radial() const { return *radial_; }
    const ProfilePtr& radial_ptr() const { return radial_; }

    cplx radial_at(double x) const { return (*radial_)(x); }
    cplx operator()(const GroupPoint& p) const;
    cplx phase(const GroupPoint& p) const;

    GroupFunction scaled(cplx c) const;
    /// Sampled check of the declared decay at x in {1e2, 1e3, 1e4}: returns
    /// the largest |g(x)| x^{decay/2} over the samples divided by the smallest.
    double decay_spread() const;

private:
    HalfInt n_, m_;
    ProfilePtr radial_;
    double decay_;
};

GroupFunction product(const GroupFunction& a, const GroupFunction& b);
/// Σ c_i f_i over functions of one common sector.
GroupFunction combination(const std::vector<cplx>& coefs, const std::vector<GroupFunction>& fs);

}  // namespace sl2r

#include "sl2r/group.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sl2r/error.hpp"

namespace sl2r {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double ipow(double t, int d) { return d == 0 ? 1.0 : std::pow(t, d); }

}  // namespace

GroupPoint GroupPoint::make(double rho, double phi1, double phi2) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidInput("GroupPoint: rho must be >= 0");
    if (!std::isfinite(phi1) || !std::isfinite(phi2)) throw InvalidInput("GroupPoint: angles must be finite");
    return GroupPoint{rho, wrap_angle(phi1), wrap_angle(phi2)};
}

Eigen::Matrix2cd su11_matrix(const GroupPoint& p) {
    const cplx z1 = std::cosh(p.rho) * std::polar(1.0, p.phi1);
    const cplx z2 = std::sinh(p.rho) * std::polar(1.0, p.phi2);
    Eigen::Matrix2cd u;
    u << z1, z2, std::conj(z2), std::conj(z1);
    return u;
}

RadialJet RadialProfile::jet(double) const {
    throw Unsupported("radial profile has no analytic derivative data");
}

ClosedFormProfile::ClosedFormProfile(cplx coef, int d, cplx s, Jacobi poly, bool real_part)
    : coef_(coef), d_(d), s_(s), real_part_(real_part), jacobi_(poly) {
    if (d < 0 || poly.k < 0) throw InvalidInput("ClosedFormProfile: negative power or degree");
}

ClosedFormProfile::ClosedFormProfile(cplx coef, int d, cplx s, Gauss g, bool real_part)
    : coef_(coef), d_(d), s_(s), real_part_(real_part) {
    if (d < 0) throw InvalidInput("ClosedFormProfile: negative power");
    gauss_.emplace_back(g.a, g.b, g.c);
    gauss_.emplace_back(g.a + 1.0, g.b + 1.0, g.c + 1.0);
    gauss_.emplace_back(g.a + 2.0, g.b + 2.0, g.c + 2.0);
}

void ClosedFormProfile::factor(double w, double wc, cplx& q, cplx* dq, cplx* d2q) const {
    if (jacobi_) {
        const auto [k, a, b] = *jacobi_;
        const double y = wc - w;
        q = jacobi_poly(k, a, b, y);
        if (dq) *dq = k >= 1 ? -(k + a + b + 1.0) * jacobi_poly(k - 1, a + 1.0, b + 1.0, y) : 0.0;
        if (d2q)
            *d2q = k >= 2 ? (k + a + b + 1.0) * (k + a + b + 2.0) * jacobi_poly(k - 2, a + 2.0, b + 2.0, y)
                          : 0.0;
        return;
    }
    const Hyp2F1& f0 = gauss_[0];
    q = f0(w, wc);
    const cplx a = f0.a(), b = f0.b(), c = f0.c();
    if (dq) *dq = a * b / c * gauss_[1](w, wc);
    if (d2q) *d2q = a * (a + 1.0) * b * (b + 1.0) / (c * (c + 1.0)) * gauss_[2](w, wc);
}

cplx ClosedFormProfile::operator()(double x) const {
    if (!(x >= 1.0)) throw DomainError("radial profile evaluated at x < 1");
    const double w = (x - 1.0) / (x + 1.0);
    const double wc = 2.0 / (x + 1.0);
    cplx q;
    factor(w, wc, q, nullptr, nullptr);
    const double td = d_ == 0 ? 1.0 : std::pow(w, 0.5 * d_);
    const cplx v = coef_ * td * std::exp(-s_ * std::log(0.5 * (x + 1.0))) * q;
    return real_part_ ? cplx(v.real(), 0.0) : v;
}

RadialJet ClosedFormProfile::jet(double rho) const {
    if (!(rho >= 0.0)) throw DomainError("radial jet at negative rho");
    const double e = std::exp(-2.0 * rho);
    const double T = (1.0 - e) / (1.0 + e);
    const double wc = 4.0 * e / ((1.0 + e) * (1.0 + e));  // sech² ρ
    const double w = T * T;
    const double log_cosh = rho + std::log1p(e) - std::log(2.0);
    const int d = d_;

    const double A = ipow(T, d);
    const double A1 = d >= 1 ? d * ipow(T, d - 1) * wc : 0.0;
    const double A2 = d >= 1 ? d * wc * ((d >= 2 ? (d - 1) * ipow(T, d - 2) * wc : 0.0) - 2.0 * A) : 0.0;

    const cplx B = std::exp(-2.0 * s_ * log_cosh);
    const cplx B1 = -2.0 * s_ * T * B;
    const cplx B2 = (-2.0 * s_ * wc + 4.0 * s_ * s_ * w) * B;

    const double w1 = 2.0 * T * wc;
    const double w2 = 2.0 * wc * (1.0 - 3.0 * w);
    cplx q, dq, d2q;
    factor(w, wc, q, &dq, &d2q);
    const cplx q1 = dq * w1;
    const cplx q2 = d2q * w1 * w1 + dq * w2;

    RadialJet j;
    j.f = coef_ * A * B * q;
    j.df = coef_ * (A1 * B * q + A * B1 * q + A * B * q1);
    j.d2f = coef_ * (A2 * B * q + A * B2 * q + A * B * q2 + 2.0 * (A1 * B1 * q + A1 * B * q1 + A * B1 * q1));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (d >= 1) j.coth_f = coef_ * ipow(T, d - 1) * B * q;
    else j.coth_f = rho > 0.0 ? j.f / T : cplx(nan, nan);
    if (d >= 2) j.f_over_sinh2 = coef_ * ipow(T, d - 2) * wc * B * q;
    else if (rho > 0.0) j.f_over_sinh2 = j.f / (std::sinh(rho) * std::sinh(rho));
    else j.f_over_sinh2 = cplx(nan, nan);
    if (real_part_) {
        j.f = j.f.real();
        j.df = j.df.real();
        j.d2f = j.d2f.real();
        j.coth_f = j.coth_f.real();
        j.f_over_sinh2 = j.f_over_sinh2.real();
    }
    return j;
}

CombinationProfile::CombinationProfile(std::vector<cplx> coefs, std::vector<ProfilePtr> terms)
    : coefs_(std::move(coefs)), terms_(std::move(terms)) {
    if (coefs_.size() != terms_.size()) throw InvalidInput("CombinationProfile: size mismatch");
}

cplx CombinationProfile::operator()(double x) const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) s += coefs_[i] * (*terms_[i])(x);
    return s;
}

bool CombinationProfile::has_jet() const {
    for (const auto& t : terms_)
        if (!t->has_jet()) return false;
    return true;
}

RadialJet CombinationProfile::jet(double rho) const {
    RadialJet out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const RadialJet j = terms_[i]->jet(rho);
        const cplx c = coefs_[i];
        out.f += c * j.f;
        out.df += c * j.df;
        out.d2f += c * j.d2f;
        out.coth_f += c * j.coth_f;
        out.f_over_sinh2 += c * j.f_over_sinh2;
    }
    return out;
}

GroupFunction::GroupFunction(HalfInt n, HalfInt m, ProfilePtr radial, double decay)
    : n_(n), m_(m), radial_(std::move(radial)), decay_(decay) {
    if (!same_class(n, m)) throw InvalidInput("GroupFunction: n - m must be an integer");
    if (!radial_) throw InvalidInput("GroupFunction: null radial profile");
}

cplx GroupFunction::phase(const GroupPoint& p) const {
    const double arg = (m_ + n_).value() * p.phi1 + (m_ - n_).value() * p.phi2;
    return std::polar(1.0, arg);
}

cplx GroupFunction::operator()(const GroupPoint& p) const { return phase(p) * radial_at(p.x()); }

GroupFunction GroupFunction::scaled(cplx c) const {
    auto prof = std::make_shared<CombinationProfile>(std::vector<cplx>{c}, std::vector<ProfilePtr>{radial_});
    return GroupFunction(n_, m_, prof, decay_);
}

double GroupFunction::decay_spread() const {
    auto r = [&](double x) { return std::abs(radial_at(x)) * std::pow(x, 0.5 * decay_); };
    double ref = 0.0;
    for (int i = 0; i <= 20; ++i) ref = std::max(ref, r(10.0 * std::pow(10.0, i / 20.0)));
    const double far = std::max({r(1e2), r(1e3), r(1e4)});
    return ref > 0.0 ? far / ref : 0.0;
}

GroupFunction product(const GroupFunction& a, const GroupFunction& b) {
    return GroupFunction(a.n() + b.n(), a.m() + b.m(),
                         std::make_shared<ProductProfile>(a.radial_ptr(), b.radial_ptr()),
                         a.decay() + b.decay());
}

GroupFunction combination(const std::vector<cplx>& coefs, const std::vector<GroupFunction>& fs) {
    if (fs.empty() || coefs.size() != fs.size()) throw InvalidInput("combination: size mismatch");
    std::vector<ProfilePtr> terms;
    double decay = fs.front().decay();
    for (const auto& f : fs) {
        if (f.n() != fs.front().n() || f.m() != fs.front().m())
            throw InvalidInput("combination: functions from different sectors");
        terms.push_back(f.radial_ptr());
        decay = std::min(decay, f.decay());
    }
    return GroupFunction(fs.front().n(), fs.front().m(), std::make_shared<CombinationProfile>(coefs, terms),
                         decay);
}

}  // namespace sl2r

#include "sl2r/matrix_elements.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>

#include "sl2r/error.hpp"

namespace sl2r {

namespace {

double lgam(double x) { return std::lgamma(x); }

// (-1)^{n-m} and the ordered pair (lo, hi) used by the m >= n closed forms.
struct Ordered {
    HalfInt lo, hi;
    double sign;
};

Ordered order_weights(HalfInt n, HalfInt m) {
    if (n <= m) return {n, m, 1.0};
    const int diff = (n - m).to_int();
    return {m, n, diff % 2 == 0 ? 1.0 : -1.0};
}

// tanh^d ρ cosh^{-2λ} ρ P_k^{(d,2λ-1)}(1-2tanh²ρ) form of the D⁺ element, valid for all n, m >= λ.
ProfilePtr discrete_plus_profile(HalfInt lambda, HalfInt n, HalfInt m) {
    const auto [a, b, sign] = order_weights(n, m);  // a = smaller weight
    const double l = lambda.value();
    const int d = (b - a).to_int();
    const int k = (a - lambda).to_int();
    const double ln_norm = 0.5 * std::log(2.0 * (2.0 * l - 1.0)) - lgam(d + 1.0) +
                           0.5 * (lgam(b.value() - l + 1.0) + lgam(b.value() + l) - lgam(a.value() - l + 1.0) -
                                  lgam(a.value() + l));
    // ₂F₁(-k, k+d+2λ; d+1; w) = P_k^{(d,2λ-1)}(1-2w) k! d! / (k+d)!
    const double coef = sign * std::exp(ln_norm + lgam(k + 1.0) + lgam(d + 1.0) - lgam(k + d + 1.0));
    return std::make_shared<ClosedFormProfile>(coef, d, cplx(l, 0.0),
                                               ClosedFormProfile::Jacobi{k, double(d), 2.0 * l - 1.0});
}

ProfilePtr continuous_profile(double sigma, HalfInt n, HalfInt m) {
    const auto [a, b, sign] = order_weights(n, m);
    const int d = (b - a).to_int();
    const cplx s(0.5, sigma);
    const double ln_norm = log_gamma(b.value() + s).real() - log_gamma(a.value() + s).real() - lgam(d + 1.0);
    return std::make_shared<ClosedFormProfile>(sign * std::exp(ln_norm), d, s,
                                               ClosedFormProfile::Gauss{s - a.value(), b.value() + s, 1.0 + d},
                                               true);
}

// Fornberg weights for derivatives 0..2 at z on the given nodes.
std::array<std::vector<double>, 3> fd_weights(double z, const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(3, 0.0));
    double c1 = 1.0, c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, 2);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::array<std::vector<double>, 3> out;
    for (int k = 0; k < 3; ++k) {
        out[k].resize(n);
        for (int i = 0; i < n; ++i) out[k][i] = c[i][k];
    }
    return out;
}

cplx at_rho(const RadialProfile& g, double rho) { return g(std::cosh(2.0 * rho)); }

RadialJet fd_jet(const RadialProfile& g, double rho, const FdOptions& fd) {
    RadialJet j;
    j.f = at_rho(g, rho);
    const int levels = std::max(1, fd.levels);
    // Near ρ = 0 the profile varies on the scale ρ itself, so the step shrinks with it.
    const double h0 = std::min(fd.h, rho / 3.0);
    if (h0 >= 0.005 || h0 >= fd.h) {
        std::vector<cplx> d1(levels), d2(levels);
        for (int l = 0; l < levels; ++l) {
            const double h = h0 / double(1 << l);
            const cplx fp = at_rho(g, rho + h), fm = at_rho(g, rho - h);
            d1[l] = (fp - fm) / (2.0 * h);
            d2[l] = (fp - 2.0 * j.f + fm) / (h * h);
        }
        // Richardson on the even error expansion.
        for (int col = 1; col < levels; ++col) {
            const double f4 = std::pow(4.0, col);
            for (int l = levels - 1; l >= col; --l) {
                d1[l] = (f4 * d1[l] - d1[l - 1]) / (f4 - 1.0);
                d2[l] = (f4 * d2[l] - d2[l - 1]) / (f4 - 1.0);
            }
        }
        j.df = d1[levels - 1];
        j.d2f = d2[levels - 1];
    } else {
        // One-sided stencil away from the coordinate singularity.
        const double h = std::min(fd.h / 4.0, 0.005);
        std::vector<double> nodes(9);
        for (int i = 0; i < 9; ++i) nodes[i] = rho + i * h;
        const auto w = fd_weights(rho, nodes);
        for (int i = 0; i < 9; ++i) {
            const cplx v = i == 0 ? j.f : at_rho(g, nodes[i]);
            j.df += w[1][i] * v;
            j.d2f += w[2][i] * v;
        }
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (rho > 0.0) {
        j.coth_f = j.f / std::tanh(rho);
        j.f_over_sinh2 = j.f / (std::sinh(rho) * std::sinh(rho));
    } else {
        j.coth_f = j.f_over_sinh2 = cplx(nan, nan);
    }
    return j;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

class AppliedProfile final : public RadialProfile {
public:
    AppliedProfile(Op op, HalfInt n, HalfInt m, ProfilePtr src, DiffMode mode, FdOptions fd)
        : op_(op), n_(n), m_(m), src_(std::move(src)), mode_(mode), fd_(fd) {}

    cplx operator()(double x) const override {
        if (!(x >= 1.0)) throw DomainError("radial profile evaluated at x < 1");
        return at(0.5 * std::acosh(x));
    }

    cplx at(double rho) const {
        if (op_ == Op::L0) return n_.value() * at_rho(*src_, rho);
        if (op_ == Op::R0) return m_.value() * at_rho(*src_, rho);
        const bool singular_zone = rho < 1e-3 && mode_ == DiffMode::finite_difference;
        if (singular_zone && (op_ == Op::Casimir || n_ != m_)) return extrapolate_to(rho);
        const cplx v = combine(jet(rho), rho);
        if (!finite(v)) return extrapolate_to(rho);
        return v;
    }

private:
    RadialJet jet(double rho) const {
        return mode_ == DiffMode::analytic ? src_->jet(rho) : fd_jet(*src_, rho, fd_);
    }

    cplx combine(const RadialJet& j, double rho) const {
        const double sum = (m_ + n_).value(), diff = (m_ - n_).value();
        const double t = std::tanh(rho);
        const cplx cterm = diff != 0.0 ? diff * j.coth_f : cplx(0.0);
        switch (op_) {
            case Op::Lplus: return 0.5 * (j.df - sum * t * j.f + cterm);
            case Op::Lminus: return 0.5 * (-j.df - sum * t * j.f + cterm);
            case Op::Rplus: return 0.5 * (-j.df + sum * t * j.f + cterm);
            case Op::Rminus: return 0.5 * (j.df + sum * t * j.f + cterm);
            case Op::Casimir: {
                const double c2 = std::cosh(rho) * std::cosh(rho);
                cplx v = 0.25 * j.d2f + 0.5 * (1.0 + t * t) / (2.0 * t) * j.df + sum * sum / (4.0 * c2) * j.f;
                if (diff != 0.0) v -= 0.25 * diff * diff * j.f_over_sinh2;
                return v;
            }
            default: return 0.0;
        }
    }

    // Polynomial extrapolation from ρ_i = ρ0 + i δ, used inside the coordinate singularity.
    cplx extrapolate_to(double rho) const {
        constexpr int kPts = 6;
        constexpr double kDelta = 0.005;
        std::array<double, kPts> r{};
        std::array<cplx, kPts> v{};
        for (int i = 0; i < kPts; ++i) {
            r[i] = rho + (i + 1) * kDelta;
            v[i] = combine(jet(r[i]), r[i]);
        }
        cplx out = 0.0;
        for (int i = 0; i < kPts; ++i) {
            double l = 1.0;
            for (int k = 0; k < kPts; ++k)
                if (k != i) l *= (rho - r[k]) / (r[i] - r[k]);
            out += l * v[i];
        }
        return out;
    }

    Op op_;
    HalfInt n_, m_;
    ProfilePtr src_;
    DiffMode mode_;
    FdOptions fd_;
};

}  // namespace

GroupFunction psi(const RepLabel& L, HalfInt n, HalfInt m) {
    if (L.is_discrete()) {
        const auto& d = L.disc();
        if (d.lambda <= half(1)) throw NonNormalisable("psi: discrete series requires lambda > 1/2");
        if (!weight_support(L, n) || !weight_support(L, m))
            throw DomainError("psi: weights (" + n.str() + "," + m.str() + ") outside " + L.str());
        // D⁻ from D⁺ by complex conjugation: the radial part of Ψ⁺_{-n,-m} is real.
        const ProfilePtr prof = d.eta > 0 ? discrete_plus_profile(d.lambda, n, m)
                                          : discrete_plus_profile(d.lambda, -n, -m);
        return GroupFunction(n, m, prof, 2.0 * d.lambda.value());
    }
    if (!weight_support(L, n) || !weight_support(L, m))
        throw DomainError("psi: weights (" + n.str() + "," + m.str() + ") outside " + L.str());
    return GroupFunction(n, m, continuous_profile(L.cont().sigma, n, m), 1.0);
}

GroupFunction psi_plancherel(double sigma, HalfInt n, HalfInt m) {
    return psi(RepLabel::continuous(sigma, n.frac()), n, m).scaled(2.0);
}

cplx scalar_product(const GroupFunction& f, const GroupFunction& g, const QuadratureRule& rule) {
    if (f.n() != g.n() || f.m() != g.m()) return 0.0;
    const double p = 0.5 * (f.decay() + g.decay());
    if (p <= 1.0) throw NonNormalisable("scalar_product: radial integral does not converge");
    const auto r = rule.integrate([&](double x) { return std::conj(f.radial_at(x)) * g.radial_at(x); }, p);
    return 0.25 * r.value;
}

double truncated_norm(const GroupFunction& f, double x_max, int order) {
    const QuadratureRule rule = make_radial_rule(x_max, order);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights()[i] * std::norm(f.radial_at(rule.nodes()[i]));
    return 0.25 * s;
}

std::string op_name(Op op) {
    switch (op) {
        case Op::Lplus: return "L+";
        case Op::Lminus: return "L-";
        case Op::L0: return "L0";
        case Op::Rplus: return "R+";
        case Op::Rminus: return "R-";
        case Op::R0: return "R0";
        case Op::Casimir: return "Q";
    }
    return "?";
}

Op parse_op(const std::string& s) {
    for (Op op : {Op::Lplus, Op::Lminus, Op::L0, Op::Rplus, Op::Rminus, Op::R0, Op::Casimir})
        if (op_name(op) == s) return op;
    throw InvalidInput("unknown operator: " + s);
}

std::pair<int, int> op_shift(Op op) {
    switch (op) {
        case Op::Lplus: return {1, 0};
        case Op::Lminus: return {-1, 0};
        case Op::Rplus: return {0, 1};
        case Op::Rminus: return {0, -1};
        default: return {0, 0};
    }
}

GroupFunction apply_operator(Op op, const GroupFunction& f, DiffMode mode, FdOptions fd) {
    if (mode == DiffMode::analytic && op != Op::L0 && op != Op::R0 && !f.radial().has_jet())
        throw Unsupported("apply_operator: analytic mode needs a profile with derivative data");
    if (fd.h <= 0.0) throw InvalidInput("apply_operator: step must be positive");
    const auto [dn, dm] = op_shift(op);
    auto prof = std::make_shared<AppliedProfile>(op, f.n(), f.m(), f.radial_ptr(), mode, fd);
    return GroupFunction(f.n() + HalfInt(dn), f.m() + HalfInt(dm), prof, f.decay());
}

RadialJet radial_jet(const GroupFunction& f, double rho, DiffMode mode, FdOptions fd) {
    return mode == DiffMode::analytic ? f.radial().jet(rho) : fd_jet(f.radial(), rho, fd);
}

std::vector<TabulationRow> tabulate_psi(const std::vector<RepLabel>& labels, const std::vector<HalfInt>& ns,
                                        const std::vector<HalfInt>& ms, const std::vector<GroupPoint>& points) {
    std::vector<TabulationRow> rows;
    for (const auto& L : labels)
        for (HalfInt n : ns)
            for (HalfInt m : ms) {
                if (!weight_support(L, n) || !weight_support(L, m)) continue;
                const GroupFunction f = psi(L, n, m);
                for (const auto& p : points) rows.push_back({L, n, m, p, f(p)});
            }
    return rows;
}

void write_csv(std::ostream& os, const std::vector<TabulationRow>& rows) {
    os << "label,n,m,rho,phi1,phi2,re,im\n";
    os << std::setprecision(17);
    for (const auto& r : rows)
        os << r.label.str() << ',' << r.n.value() << ',' << r.m.value() << ',' << r.point.rho << ','
           << r.point.phi1 << ',' << r.point.phi2 << ',' << r.value.real() << ',' << r.value.imag() << '\n';
}

nlohmann::ordered_json to_json(const std::vector<TabulationRow>& rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows)
        arr.push_back({{"label", r.label.str()},
                       {"n", r.n.value()},
                       {"m", r.m.value()},
                       {"rho", r.point.rho},
                       {"phi1", r.point.phi1},
                       {"phi2", r.point.phi2},
                       {"re", r.value.real()},
                       {"im", r.value.imag()}});
    return arr;
}

}  // namespace sl2r

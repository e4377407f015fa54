#include "sl2r/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "sl2r/error.hpp"

namespace sl2r {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(cplx z, int* degree = nullptr) {
    if (z.imag() != 0.0) return false;
    const double r = std::round(z.real());
    if (r > 0.0 || std::abs(z.real() - r) > 1e-13) return false;
    if (degree) *degree = static_cast<int>(-r);
    return true;
}

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

cplx log_gamma_right(cplx z) {
    z -= 1.0;
    cplx acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z + double(i));
    const cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

// log sin(πz), stable for large |Im z|.
cplx log_sin_pi(cplx z) {
    const double y = z.imag();
    if (std::abs(y) < 20.0) return std::log(std::sin(kPi * z));
    // sin(πz) = (e^{iπz} - e^{-iπz}) / 2i, keep the dominant exponential.
    const cplx ipz(0.0, kPi);
    if (y > 0) {
        const cplx lead = -ipz * z;  // e^{-iπz} dominates
        return lead + std::log(-(1.0 - std::exp(2.0 * ipz * z)) / cplx(0.0, 2.0));
    }
    const cplx lead = ipz * z;
    return lead + std::log((1.0 - std::exp(-2.0 * ipz * z)) / cplx(0.0, 2.0));
}

}  // namespace

double gen_binomial(double r, int j) {
    if (j < 0) return 0.0;
    double v = 1.0;
    for (int i = 0; i < j; ++i) v *= (r - i) / (i + 1);
    return v;
}

double jacobi_poly_sum(int k, double a, double b, double x) {
    if (k < 0) throw InvalidInput("jacobi_poly: negative degree");
    const double xm = 0.5 * (x - 1.0), xp = 0.5 * (x + 1.0);
    double sum = 0.0;
    for (int s = 0; s <= k; ++s)
        sum += gen_binomial(k + a, s) * gen_binomial(k + b, k - s) * std::pow(xm, k - s) *
               std::pow(xp, s);
    return sum;
}

double jacobi_poly(int k, double a, double b, double x) {
    if (k < 0) throw InvalidInput("jacobi_poly: negative degree");
    if (k == 0) return 1.0;
    // binom(k+a, s) binom(k+b, k-s) vanishes for every s: the polynomial is identically zero.
    const double ka = k + a, kb = k + b;
    if (ka >= 0 && kb >= 0 && ka == std::floor(ka) && kb == std::floor(kb) && ka + kb < k) return 0.0;
    // Negative integer parameters: the recurrence loses digits to cancellation.
    if ((a < 0 && a == std::floor(a)) || (b < 0 && b == std::floor(b))) return jacobi_poly_sum(k, a, b, x);
    const double ab = a + b;
    double p0 = 1.0;
    double p1 = (a + 1.0) + (ab + 2.0) * 0.5 * (x - 1.0);
    for (int n = 2; n <= k; ++n) {
        const double c2n = 2.0 * n + ab;
        const double lead = 2.0 * n * (n + ab) * (c2n - 2.0);
        if (std::abs(lead) < 1e-10 * (1.0 + std::abs(c2n) * n * n))
            return jacobi_poly_sum(k, a, b, x);
        const double p2 = ((c2n - 1.0) * (c2n * (c2n - 2.0) * x + a * a - b * b) * p1 -
                           2.0 * (n + a - 1.0) * (n + b - 1.0) * c2n * p0) /
                          lead;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at non-positive integer");
    if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
    return log_gamma_right(z);
}

cplx recip_gamma(cplx z) {
    if (is_nonpositive_integer(z)) return 0.0;
    return std::exp(-log_gamma(z));
}

cplx hyp2f1_series(cplx a, cplx b, cplx c, double w, int max_terms) {
    cplx term = 1.0, sum = 1.0;
    int small = 0;
    for (int k = 0; k < max_terms; ++k) {
        term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * w;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++small == 2) return sum;
        } else {
            small = 0;
        }
    }
    throw AccuracyError("hyp2f1: series did not converge", std::abs(term) / std::abs(sum));
}

Hyp2F1::Hyp2F1(cplx a, cplx b, cplx c) : a_(a), b_(b), c_(c) {
    int da = -1, db = -1;
    const bool ta = is_nonpositive_integer(a, &da);
    const bool tb = is_nonpositive_integer(b, &db);
    if (ta || tb) terminating_ = (ta && tb) ? std::min(da, db) : (ta ? da : db);
    int dc = 0;
    if (is_nonpositive_integer(c, &dc) && !(terminating_ >= 0 && terminating_ <= dc))
        throw PoleError("hyp2f1: gamma is a non-positive integer");
    if (terminating_ >= 0) return;
    s_ = c - a - b;
    const double frac = std::abs(s_ - std::round(s_.real()));
    use_connection_ = frac > 1e-8;
    if (use_connection_) {
        const cplx lgc = log_gamma(c);
        // Γ(c)Γ(s)/(Γ(c-a)Γ(c-b)) and Γ(c)Γ(-s)/(Γ(a)Γ(b)).
        coef_a_ = std::exp(lgc + log_gamma(s_)) * recip_gamma(c - a) * recip_gamma(c - b);
        coef_b_ = std::exp(lgc + log_gamma(-s_)) * recip_gamma(a) * recip_gamma(b);
    }
}

cplx Hyp2F1::series(double w) const { return hyp2f1_series(a_, b_, c_, w); }

cplx Hyp2F1::operator()(double w, double wc) const {
    if (w == 0.0) return 1.0;
    if (terminating_ >= 0) {
        cplx term = 1.0, sum = 1.0;
        for (int k = 0; k < terminating_; ++k) {
            term *= (a_ + double(k)) * (b_ + double(k)) / ((c_ + double(k)) * double(k + 1)) * w;
            sum += term;
        }
        return sum;
    }
    if (w <= 0.5 || !use_connection_) return series(w);
    cplx out = 0.0;
    if (coef_a_ != 0.0) out += coef_a_ * hyp2f1_series(a_, b_, 1.0 - s_, wc);
    if (coef_b_ != 0.0)
        out += coef_b_ * std::exp(s_ * std::log(wc)) * hyp2f1_series(c_ - a_, c_ - b_, 1.0 + s_, wc);
    return out;
}

cplx hyp2f1(cplx alpha, cplx beta, cplx gamma, double z) {
    if (z > 0.0) throw DomainError("hyp2f1: argument must be <= 0");
    if (z == 0.0) {
        Hyp2F1 check(alpha, beta, gamma);  // pole validation
        return 1.0;
    }
    // Keep a terminating parameter in the first slot so the Pfaff image terminates too.
    int d = 0;
    if (!is_nonpositive_integer(alpha, &d) && is_nonpositive_integer(beta, &d)) std::swap(alpha, beta);
    const double w = z / (z - 1.0);
    const double wc = 1.0 / (1.0 - z);
    const Hyp2F1 f(alpha, gamma - beta, gamma);
    return std::exp(alpha * std::log(wc)) * f(w, wc);
}

GaussRule gauss_legendre(int n, double a, double b) {
    if (n <= 0) throw InvalidInput("gauss_legendre: order must be positive");
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double mid = 0.5 * (a + b), half_len = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.nodes[i] = mid - half_len * z;
        r.nodes[n - 1 - i] = mid + half_len * z;
        r.weights[i] = r.weights[n - 1 - i] = 2.0 * half_len / ((1.0 - z * z) * pp * pp);
    }
    return r;
}

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights, double lower,
                               double upper, bool half_line, int degree, double target)
    : nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      lower_(lower),
      upper_(upper),
      half_line_(half_line),
      degree_(degree),
      target_(target) {
    if (nodes_.size() != weights_.size()) throw InvalidInput("QuadratureRule: size mismatch");
}

double QuadratureRule::tail_estimate(cplx f_at_upper, double decay) const {
    if (!half_line_ || decay <= 1.0) return 0.0;
    return std::abs(f_at_upper) * (upper_ + 1.0) / (decay - 1.0);
}

QuadratureRule::Result QuadratureRule::integrate(const std::function<cplx(double)>& f,
                                                 double decay) const {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
    if (!half_line_ || decay <= 1.0) return {sum, 0.0};
    const cplx end = f(upper_);
    const cplx tail = end * (upper_ + 1.0) / (decay - 1.0);
    return {sum + tail, std::abs(tail)};
}

QuadratureRule make_radial_rule(double x_max, int order) {
    if (!(x_max > 1.0)) throw InvalidInput("make_radial_rule: x_max must exceed 1");
    if (order <= 0) throw InvalidInput("make_radial_rule: order must be positive");
    std::vector<double> edges = {1.0, 1.5, 2.0};
    for (double e = 3.0; e < x_max; e = 2.0 * e + 1.0) edges.push_back(e);
    while (edges.back() >= x_max) edges.pop_back();
    edges.push_back(x_max);
    std::vector<double> nodes, weights;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const GaussRule g = gauss_legendre(order, edges[p], edges[p + 1]);
        nodes.insert(nodes.end(), g.nodes.begin(), g.nodes.end());
        weights.insert(weights.end(), g.weights.begin(), g.weights.end());
    }
    return QuadratureRule(std::move(nodes), std::move(weights), 1.0, x_max, true, 2 * order - 1,
                          1e-12);
}

QuadratureRule make_interval_rule(double a, double b, int order, int panels) {
    if (!(b > a)) throw InvalidInput("make_interval_rule: empty interval");
    if (order <= 0 || panels <= 0) throw InvalidInput("make_interval_rule: bad order/panels");
    std::vector<double> nodes, weights;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h, hi = (p + 1 == panels) ? b : a + (p + 1) * h;
        const GaussRule g = gauss_legendre(order, lo, hi);
        nodes.insert(nodes.end(), g.nodes.begin(), g.nodes.end());
        weights.insert(weights.end(), g.weights.begin(), g.weights.end());
    }
    return QuadratureRule(std::move(nodes), std::move(weights), a, b, false, 2 * order - 1, 1e-13);
}

}  // namespace sl2r

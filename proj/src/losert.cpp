#include "sl2r/losert.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "sl2r/error.hpp"
#include "sl2r/kernels.hpp"

namespace sl2r {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Weights brought to n >= m >= ... with case 2 mirrored onto case 1.
struct Canonical {
    double n, m;  // n >= m after mirror and swap
    int a;        // |n - m|
    double eps;
    SectorClass cls;
};

Canonical canonical(HalfInt n, HalfInt m, int k) {
    if (!same_class(n, m)) throw InvalidInput("Losert index: n - m must be an integer");
    if (k < 0) throw InvalidInput("Losert index: k must be nonnegative");
    const SectorClass cls = classify(n, m);
    HalfInt cn = n, cm = m;
    if (cls.tag == SectorCase::case2) {
        cn = -n;
        cm = -m;
    }
    if (cm > cn) std::swap(cn, cm);
    return Canonical{cn.value(), cm.value(), (cn - cm).to_int(), n.frac().value(), cls};
}

struct Closed {
    double ln_coef;
    int d;
    double s;
    int k;
    double alpha, beta;
};

// e_{nmk} = exp(ln_coef) tanh^d ρ cosh^{-2s} ρ P_k^{(α,β)}(1-2 tanh²ρ).
Closed closed_form(HalfInt n, HalfInt m, int k) {
    const Canonical c = canonical(n, m, k);
    const double a = c.a, eps = c.eps;
    if (k < c.cls.k_min) {
        const double hi = c.n, lo = c.m;
        const double ln_n = 0.5 * ((2.0 * lo - 1.0) * kLn2 + std::log(2.0 * lo - 2.0 * k - 1.0) +
                                   std::lgamma(k + 1.0) + std::lgamma(lo + hi - k) - std::lgamma(2.0 * lo - k) -
                                   std::lgamma(hi - lo + k + 1.0));
        return {ln_n - lo * kLn2, c.a, lo - k, k, a, 2.0 * lo - 2.0 * k - 1.0};
    }
    const double ln_n = 0.5 * ((2.0 * k + 2.0 * eps + 1.0) * kLn2 + std::log(2.0 * k + a + 2.0 * eps + 1.0) +
                               std::lgamma(k + a + 2.0 * eps + 1.0) + std::lgamma(k + 1.0) -
                               std::lgamma(k + 2.0 * eps + 1.0) - std::lgamma(a + k + 1.0));
    return {ln_n - (eps + 1.0 + k) * kLn2, c.a, eps + 1.0, k, a, 2.0 * eps};
}

}  // namespace

SectorClass classify(HalfInt n, HalfInt m) {
    if (!same_class(n, m)) throw InvalidInput("classify: n - m must be an integer");
    const HalfInt h = half(1);
    SectorCase tag = SectorCase::case3;
    if (n > h && m > h) tag = SectorCase::case1;
    else if (n < -h && m < -h) tag = SectorCase::case2;
    if (tag == SectorCase::case3) return {tag, 0};
    const HalfInt lo = min(abs(n), abs(m));
    return {tag, (lo - n.frac()).to_int()};
}

std::string case_name(SectorCase c) {
    switch (c) {
        case SectorCase::case1: return "case1";
        case SectorCase::case2: return "case2";
        default: return "case3";
    }
}

double e_radial(HalfInt n, HalfInt m, int k, double x) { return (*e_profile(n, m, k))(x).real(); }

double e_radial_printed(HalfInt n, HalfInt m, int k, double x) {
    if (!(x >= 1.0)) throw DomainError("e_radial_printed: x < 1");
    const Canonical c = canonical(n, m, k);
    const double a = c.a, eps = c.eps, hi = c.n, lo = c.m;
    if (k < c.cls.k_min) {
        const double norm = std::sqrt(std::pow(2.0, 2.0 * lo - 1.0) * (2.0 * lo - 2.0 * k - 1.0) *
                                      std::tgamma(k + 1.0) * std::tgamma(lo + hi - k) /
                                      (std::tgamma(2.0 * lo - k) * std::tgamma(hi - lo + k + 1.0)));
        return norm * std::pow(x - 1.0, 0.5 * a) * std::pow(x + 1.0, -0.5 * (lo + hi)) *
               jacobi_poly_sum(k, a, -(lo + hi), x);
    }
    const double norm = std::sqrt(std::pow(2.0, 2.0 * k + 2.0 * eps + 1.0) * (2.0 * k + a + 2.0 * eps + 1.0) *
                                  std::tgamma(k + a + 2.0 * eps + 1.0) * std::tgamma(k + 1.0) /
                                  (std::tgamma(k + 2.0 * eps + 1.0) * std::tgamma(a + k + 1.0)));
    return norm * std::pow(x - 1.0, 0.5 * a) * std::pow(x + 1.0, -0.5 * a - k - eps - 1.0) *
           jacobi_poly_sum(k, a, -a - 2.0 * k - 2.0 * eps - 1.0, x);
}

ProfilePtr e_profile(HalfInt n, HalfInt m, int k, double scale) {
    const Closed c = closed_form(n, m, k);
    return std::make_shared<ClosedFormProfile>(scale * std::exp(c.ln_coef), c.d, cplx(c.s, 0.0),
                                               ClosedFormProfile::Jacobi{c.k, c.alpha, c.beta});
}

double losert_decay(HalfInt n, HalfInt m, int k) { return 2.0 * closed_form(n, m, k).s; }

GroupFunction phi(HalfInt n, HalfInt m, int k) {
    return GroupFunction(n, m, e_profile(n, m, k, 2.0), losert_decay(n, m, k));
}

GroupFunction phi(const LosertIndex& i) { return phi(i.n, i.m, i.k); }

RepLabel discrete_partner(HalfInt n, HalfInt m, int k) {
    const SectorClass cls = classify(n, m);
    if (k < 0 || k >= cls.k_min) throw DomainError("discrete_partner: element is not in the discrete part");
    const HalfInt lo = min(abs(n), abs(m));
    return RepLabel::discrete(lo - HalfInt(k), cls.tag == SectorCase::case1 ? +1 : -1);
}

const QuadratureRule& losert_rule() {
    static const QuadratureRule rule = make_radial_rule(1e10, 32);
    return rule;
}

Eigen::MatrixXd gram_matrix(HalfInt n, HalfInt m, int k_max, const QuadratureRule& rule) {
    if (k_max < 0) throw InvalidInput("gram_matrix: k_max must be nonnegative");
    std::vector<GroupFunction> fs;
    for (int k = 0; k <= k_max; ++k) fs.push_back(phi(n, m, k));
    return gram(fs, fs, rule, Exec::parallel).real();
}

namespace {

using LadderKey = std::tuple<int, int, int, int>;

struct LadderCache {
    std::shared_mutex mu;
    std::map<LadderKey, CoefficientTable<LosertIndex>> tables;
};

LadderCache& ladder_cache() {
    static LadderCache c;
    return c;
}

CoefficientTable<LosertIndex> compute_ladder(Op op, HalfInt n, HalfInt m, int k) {
    const GroupFunction src = phi(n, m, k);
    const GroupFunction img = apply_operator(op, src, DiffMode::analytic);
    const HalfInt n2 = img.n(), m2 = img.m();
    const QuadratureRule& rule = losert_rule();

    std::vector<GroupFunction> targets;
    std::vector<LosertIndex> keys;
    for (int k2 = std::max(0, k - 3); k2 <= k + 3; ++k2) {
        targets.push_back(phi(n2, m2, k2));
        keys.push_back({n2, m2, k2});
    }
    const SampledSet tb = sample_functions(targets, rule, Exec::parallel);
    const SampledSet fi = sample_functions({img}, rule, Exec::parallel);
    const Eigen::VectorXcd c = radial_gram(tb, fi, rule, Exec::parallel).col(0);

    CoefficientTable<LosertIndex> table;
    for (std::size_t i = 0; i < keys.size(); ++i) table.entries.emplace_back(keys[i], c[i]);

    // Residual sampled pointwise so it is not limited by cancellation in ‖f‖² - Σ|c|².
    SampledSet res = fi;
    res.values.col(0) -= tb.values * c;
    res.end[0] -= (tb.end * c)(0);
    table.residual = std::sqrt(std::max(0.0, radial_gram(res, res, rule, Exec::serial)(0, 0).real()));
    return table;
}

}  // namespace

CoefficientTable<LosertIndex> ladder_on_phi(Op op, HalfInt n, HalfInt m, int k, double tol) {
    if (op == Op::L0 || op == Op::R0) {
        CoefficientTable<LosertIndex> t;
        t.entries.emplace_back(LosertIndex{n, m, k}, op == Op::L0 ? n.value() : m.value());
        return t;
    }
    const LadderKey key{static_cast<int>(op), n.twice(), m.twice(), k};
    auto& cache = ladder_cache();
    CoefficientTable<LosertIndex> table;
    bool found = false;
    {
        std::shared_lock lock(cache.mu);
        const auto it = cache.tables.find(key);
        if (it != cache.tables.end()) {
            table = it->second;
            found = true;
        }
    }
    if (!found) {
        table = compute_ladder(op, n, m, k);
        std::unique_lock lock(cache.mu);
        table = cache.tables.emplace(key, table).first->second;
    }
    if (table.residual > tol)
        throw IncompleteError("ladder_on_phi: " + op_name(op) + " expansion of Phi(" + n.str() + "," + m.str() +
                                  "," + std::to_string(k) + ") is incomplete",
                              table.residual);
    return table;
}

void clear_ladder_cache() {
    auto& cache = ladder_cache();
    std::unique_lock lock(cache.mu);
    cache.tables.clear();
}

std::size_t ladder_cache_size() {
    auto& cache = ladder_cache();
    std::shared_lock lock(cache.mu);
    return cache.tables.size();
}

nlohmann::ordered_json to_json(Op op, const LosertIndex& src, const CoefficientTable<LosertIndex>& table) {
    nlohmann::ordered_json out;
    out["op"] = op_name(op);
    out["n"] = src.n.value();
    out["m"] = src.m.value();
    out["k"] = src.k;
    out["residual"] = table.residual;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [idx, v] : table.entries)
        arr.push_back({{"n", idx.n.value()}, {"m", idx.m.value()}, {"k", idx.k}, {"re", v.real()}, {"im", v.imag()}});
    out["coefficients"] = arr;
    return out;
}

}  // namespace sl2r

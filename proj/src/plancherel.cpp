#include "sl2r/plancherel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <tuple>

#include "sl2r/error.hpp"

namespace sl2r {

SigmaGrid SigmaGrid::make(double sigma_max, int panels, int order) {
    if (!(sigma_max > 0.0)) throw InvalidInput("SigmaGrid: sigma_max must be positive");
    const QuadratureRule r = make_interval_rule(0.0, sigma_max, order, panels);
    SigmaGrid g;
    g.sigma_max = sigma_max;
    g.nodes = r.nodes();
    g.weights = r.weights();
    return g;
}

double plancherel_weight(double sigma, HalfInt eps) {
    if (!(sigma > 0.0)) throw DomainError("plancherel_weight: sigma must be positive");
    const double t = std::tanh(std::numbers::pi * sigma);
    return eps.is_integer() ? sigma * t : sigma / t;
}

const QuadratureRule& transform_rule() {
    static const QuadratureRule rule = make_radial_rule(1e22, 32);
    return rule;
}

namespace {

using SampleKey = std::tuple<int, int, double, std::size_t, double, double, std::size_t>;

struct SampleCache {
    std::shared_mutex mu;
    std::map<SampleKey, std::shared_ptr<const SampledSet>> sets;
};

SampleCache& sample_cache() {
    static SampleCache c;
    return c;
}

std::vector<ProfilePtr> continuous_profiles(HalfInt n, HalfInt m, const std::vector<double>& sigmas) {
    std::vector<ProfilePtr> out;
    out.reserve(sigmas.size());
    for (double s : sigmas) out.push_back(psi_plancherel(s, n, m).radial_ptr());
    return out;
}

double weighted_sigma_measure(const SigmaGrid& grid, HalfInt eps, std::size_t j) {
    return grid.weights[j] * plancherel_weight(grid.nodes[j], eps);
}

}  // namespace

std::shared_ptr<const SampledSet> continuous_samples(HalfInt n, HalfInt m, const SigmaGrid& grid,
                                                     const QuadratureRule& rule) {
    const SampleKey key{n.twice(), m.twice(), grid.sigma_max, grid.size(),
                        grid.size() ? grid.nodes.front() : 0.0, rule.upper(), rule.size()};
    auto& cache = sample_cache();
    {
        std::shared_lock lock(cache.mu);
        const auto it = cache.sets.find(key);
        if (it != cache.sets.end()) return it->second;
    }
    auto set = std::make_shared<const SampledSet>(sample_profiles(
        continuous_profiles(n, m, grid.nodes), std::vector<double>(grid.size(), 1.0), rule, Exec::parallel));
    std::unique_lock lock(cache.mu);
    return cache.sets.emplace(key, set).first->second;
}

std::vector<RepLabel> discrete_labels(HalfInt n, HalfInt m, HalfInt lambda_max) {
    std::vector<RepLabel> out;
    if (!same_class(n, m)) return out;
    for (HalfInt l = n.frac() + HalfInt(1); l <= lambda_max; l += HalfInt(1))
        for (int eta : {+1, -1}) {
            const RepLabel L = RepLabel::discrete(l, eta);
            if (weight_support(L, n) && weight_support(L, m)) out.push_back(L);
        }
    return out;
}

double PlancherelCoefficients::parseval_sum() const {
    double s = 0.0;
    for (const auto& d : discrete) s += std::norm(d.value);
    for (std::size_t j = 0; j < continuous.size(); ++j)
        s += weighted_sigma_measure(grid, eps(), j) * std::norm(continuous[j]);
    return s;
}

nlohmann::ordered_json PlancherelCoefficients::to_json() const {
    nlohmann::ordered_json out;
    auto disc = nlohmann::ordered_json::array();
    for (const auto& d : discrete)
        disc.push_back({{"n", n.value()},
                        {"lambda", d.label.disc().lambda.value()},
                        {"eta", d.label.disc().eta > 0 ? "+" : "-"},
                        {"m", m.value()},
                        {"re", d.value.real()},
                        {"im", d.value.imag()}});
    auto cont = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < continuous.size(); ++j)
        cont.push_back({{"eps", eps().value()},
                        {"n", n.value()},
                        {"m", m.value()},
                        {"sigma", grid.nodes[j]},
                        {"re", continuous[j].real()},
                        {"im", continuous[j].imag()}});
    out["discrete"] = disc;
    out["continuous"] = cont;
    return out;
}

PlancherelCoefficients analyze(const GroupFunction& f, HalfInt lambda_max, const SigmaGrid& grid,
                               const QuadratureRule& rule, Exec exec) {
    if (0.5 * (f.decay() + 1.0) <= 1.0)
        throw NonNormalisable("analyze: function decays too slowly for the continuous pairing");
    PlancherelCoefficients c;
    c.n = f.n();
    c.m = f.m();
    c.grid = grid;
    const SampledSet fs = sample_functions({f}, rule, exec);

    const auto labels = discrete_labels(f.n(), f.m(), lambda_max);
    std::vector<GroupFunction> psis;
    for (const auto& L : labels) psis.push_back(psi(L, f.n(), f.m()));
    if (!psis.empty()) {
        const Eigen::MatrixXcd g = radial_gram(sample_functions(psis, rule, exec), fs, rule, exec);
        for (std::size_t i = 0; i < labels.size(); ++i) c.discrete.push_back({labels[i], g(i, 0)});
    }
    const auto cs = continuous_samples(f.n(), f.m(), grid, rule);
    const Eigen::MatrixXcd g = radial_gram(*cs, fs, rule, exec);
    c.continuous.assign(g.data(), g.data() + g.rows());
    return c;
}

Eigen::VectorXcd synthesize_radial(const PlancherelCoefficients& c, const std::vector<double>& xs, Exec exec) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(xs.size()));
    if (!c.discrete.empty()) {
        std::vector<ProfilePtr> profs;
        Eigen::VectorXcd w(static_cast<Eigen::Index>(c.discrete.size()));
        for (std::size_t i = 0; i < c.discrete.size(); ++i) {
            profs.push_back(psi(c.discrete[i].label, c.n, c.m).radial_ptr());
            w[i] = c.discrete[i].value;
        }
        out += combine_columns(evaluate_profiles(profs, xs, exec), w, exec);
    }
    if (!c.continuous.empty()) {
        Eigen::VectorXcd w(static_cast<Eigen::Index>(c.continuous.size()));
        for (std::size_t j = 0; j < c.continuous.size(); ++j)
            w[j] = weighted_sigma_measure(c.grid, c.eps(), j) * c.continuous[j];
        out += combine_columns(evaluate_profiles(continuous_profiles(c.n, c.m, c.grid.nodes), xs, exec), w, exec);
    }
    return out;
}

cplx synthesize(const PlancherelCoefficients& c, const GroupPoint& p) {
    const GroupFunction carrier(c.n, c.m, std::make_shared<FunctionProfile>([](double) { return cplx(1.0); }), 0.0);
    return carrier.phase(p) * synthesize_radial(c, {p.x()}, Exec::serial)[0];
}

RoundTrip round_trip(const GroupFunction& f, HalfInt lambda_max, const SigmaGrid& grid) {
    const PlancherelCoefficients c = analyze(f, lambda_max, grid);
    const QuadratureRule& check = losert_rule();
    const SampledSet fs = sample_functions({f}, check, Exec::parallel);
    SampledSet diff = fs;
    diff.values.col(0) -= synthesize_radial(c, check.nodes());
    diff.end[0] -= synthesize_radial(c, {check.upper()})[0];
    const double norm2 = radial_gram(fs, fs, check, Exec::serial)(0, 0).real();
    const double err2 = radial_gram(diff, diff, check, Exec::serial)(0, 0).real();
    return {std::sqrt(std::max(0.0, err2) / norm2), c.parseval_sum(), norm2};
}

std::vector<cplx> basis_conversion(HalfInt n, HalfInt m, int k, const SigmaGrid& grid, const QuadratureRule& rule) {
    const SectorClass cls = classify(n, m);
    if (k < cls.k_min)
        throw DomainError("basis_conversion: Phi(" + n.str() + "," + m.str() + "," + std::to_string(k) +
                          ") lies in the discrete part");
    const auto cs = continuous_samples(n, m, grid, rule);
    const Eigen::MatrixXcd g = radial_gram(*cs, sample_functions({phi(n, m, k)}, rule, Exec::parallel), rule,
                                           Exec::parallel);
    return std::vector<cplx>(g.data(), g.data() + g.rows());
}

cplx conversion_coefficient(double sigma, HalfInt n, HalfInt m, int k, const QuadratureRule& rule) {
    if (k < classify(n, m).k_min) throw DomainError("conversion_coefficient: element lies in the discrete part");
    return scalar_product(psi_plancherel(sigma, n, m), phi(n, m, k), rule);
}

double line_parseval(HalfInt n, HalfInt m, int k, const SigmaGrid& grid) {
    const auto c = basis_conversion(n, m, k, grid);
    double s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) s += weighted_sigma_measure(grid, n.frac(), j) * std::norm(c[j]);
    return s;
}

cplx reconstruct_phi(const std::vector<cplx>& coef, HalfInt n, HalfInt m, const SigmaGrid& grid, double x) {
    if (coef.size() != grid.size()) throw InvalidInput("reconstruct_phi: coefficient/grid size mismatch");
    PlancherelCoefficients c;
    c.n = n;
    c.m = m;
    c.grid = grid;
    c.continuous = coef;
    return synthesize_radial(c, {x}, Exec::serial)[0];
}

std::vector<cplx> inverse_expansion(double sigma, HalfInt n, HalfInt m, int K, const std::vector<double>& xs,
                                    bool filtered) {
    const int k_min = classify(n, m).k_min;
    if (K < k_min) throw InvalidInput("inverse_expansion: K below k_min");
    std::vector<ProfilePtr> profs;
    Eigen::VectorXcd w(K - k_min + 1);
    for (int k = k_min; k <= K; ++k) {
        const double damp = filtered ? std::exp(-36.0 * std::pow(double(k) / K, 8)) : 1.0;
        w[k - k_min] = 0.5 * damp * std::conj(conversion_coefficient(sigma, n, m, k));
        profs.push_back(phi(n, m, k).radial_ptr());
    }
    const Eigen::VectorXcd v = combine_columns(evaluate_profiles(profs, xs, Exec::parallel), w, Exec::parallel);
    return std::vector<cplx>(v.data(), v.data() + v.size());
}

SigmaPacket SigmaPacket::gaussian(double center, double width, cplx scale) {
    if (!(width > 0.0)) throw InvalidInput("SigmaPacket: width must be positive");
    return SigmaPacket{[=](double s) {
                           const double u = (s - center) / width;
                           return scale * std::exp(-0.5 * u * u);
                       },
                       center - 6.0 * width, center + 6.0 * width};
}

SmearedNorm smeared_inner(const SigmaPacket& a, const SigmaPacket& b, HalfInt n, HalfInt m) {
    constexpr int kOrder = 64;
    const HalfInt eps = n.frac();
    const bool touches = a.lo <= 0.0 || b.lo <= 0.0;
    const QuadratureRule& rule = transform_rule();

    auto smear = [&](const SigmaPacket& p, std::vector<double>& s, Eigen::VectorXcd& w) {
        const GaussRule g = gauss_legendre(kOrder, std::max(0.0, p.lo), p.hi);
        s = g.nodes;
        w.resize(kOrder);
        for (int i = 0; i < kOrder; ++i) w[i] = g.weights[i] * plancherel_weight(s[i], eps) * p.g(s[i]);
    };
    std::vector<double> sa, sb;
    Eigen::VectorXcd wa, wb;
    smear(a, sa, wa);
    smear(b, sb, wb);

    auto build = [&](const std::vector<double>& s, const Eigen::VectorXcd& w) {
        const SampledSet ps = sample_profiles(continuous_profiles(n, m, s), std::vector<double>(s.size(), 1.0),
                                              rule, Exec::parallel);
        // F decays faster than any power once the σ-oscillations average out.
        SampledSet f{combine_columns(ps.values, w, Exec::parallel), Eigen::RowVectorXcd(1), {4.0}};
        f.end[0] = (ps.end * w)(0);
        return f;
    };
    const SampledSet fa = build(sa, wa), fb = build(sb, wb);
    SmearedNorm out;
    out.value = radial_gram(fa, fb, rule, Exec::serial)(0, 0);
    out.touches_zero = touches;

    // ∫ ν conj(g_a) g_b dσ over the overlap of the supports.
    const double lo = std::max({0.0, a.lo, b.lo}), hi = std::min(a.hi, b.hi);
    out.expected = 0.0;
    if (hi > lo) {
        const GaussRule g = gauss_legendre(kOrder, lo, hi);
        for (int i = 0; i < kOrder; ++i)
            out.expected += g.weights[i] * plancherel_weight(g.nodes[i], eps) * std::conj(a.g(g.nodes[i])) *
                            b.g(g.nodes[i]);
    }
    return out;
}

SmearedNorm smeared_continuous_norm(const SigmaPacket& g, HalfInt n, HalfInt m) { return smeared_inner(g, g, n, m); }

}  // namespace sl2r

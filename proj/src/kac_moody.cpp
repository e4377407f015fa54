#include "sl2r/kac_moody.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include "sl2r/error.hpp"
#include "sl2r/kernels.hpp"

namespace sl2r {

namespace {

// Ordering key of a Plancherel label: discrete before continuous.
std::tuple<int, double, int> label_key(const RepLabel& L) {
    if (L.is_discrete()) return {0, L.disc().lambda.value(), L.disc().eta};
    return {1, L.cont().sigma, L.cont().eps.twice()};
}

GroupFunction mode_function(const PlancherelMode& p) {
    if (p.label.is_discrete()) return psi(p.label, p.n, p.m);
    return psi_plancherel(p.label.cont().sigma, p.n, p.m);
}

template <class Key, class Value>
struct Cache {
    std::shared_mutex mu;
    std::map<Key, Value> map;

    template <class F>
    Value get(const Key& key, F&& compute) {
        {
            std::shared_lock lock(mu);
            const auto it = map.find(key);
            if (it != map.end()) return it->second;
        }
        Value v = compute();
        std::unique_lock lock(mu);
        return map.emplace(key, std::move(v)).first->second;
    }
    void clear() {
        std::unique_lock lock(mu);
        map.clear();
    }
};

using ProductKey = std::tuple<int, int, int, int, int, int, int>;
Cache<ProductKey, CoefficientTable<LosertIndex>>& product_cache() {
    static Cache<ProductKey, CoefficientTable<LosertIndex>> c;
    return c;
}

using CGKey = std::tuple<int, int, std::tuple<int, double, int>, int, int, std::tuple<int, double, int>, double,
                         std::size_t>;
Cache<CGKey, CGExpansion>& cg_cache() {
    static Cache<CGKey, CGExpansion> c;
    return c;
}

CoefficientTable<LosertIndex> compute_product(const LosertIndex& i, const LosertIndex& j, int k_max) {
    const GroupFunction f = product(phi(i), phi(j));
    const HalfInt n = f.n(), m = f.m();
    const QuadratureRule& rule = losert_rule();
    std::vector<GroupFunction> targets;
    for (int k = 0; k <= k_max; ++k) targets.push_back(phi(n, m, k));
    const SampledSet tb = sample_functions(targets, rule, Exec::serial);
    const SampledSet fs = sample_functions({f}, rule, Exec::serial);
    const Eigen::VectorXcd c = radial_gram(tb, fs, rule, Exec::serial).col(0);
    CoefficientTable<LosertIndex> t;
    for (int k = 0; k <= k_max; ++k) t.entries.emplace_back(LosertIndex{n, m, k}, c[k]);
    SampledSet res = fs;
    res.values.col(0) -= tb.values * c;
    res.end[0] -= (tb.end * c)(0);
    t.residual = std::sqrt(std::max(0.0, radial_gram(res, res, rule, Exec::serial)(0, 0).real()));
    return t;
}

double sign_of_partner(HalfInt n, HalfInt m, int k) {
    // Φ_{nmk} = ±Ψ_{n,Λ,m}; both are positive multiples of t^{a/2} near x = 1 up to the
    // sign carried by the matrix element.
    const double ratio = psi(discrete_partner(n, m, k), n, m).radial_at(1.001).real() / e_radial(n, m, k, 1.001);
    return ratio > 0.0 ? 1.0 : -1.0;
}

}  // namespace

HalfInt KMGenerator::n() const {
    return basis() == Basis::losert ? losert_mode().n : plancherel_mode().n;
}

HalfInt KMGenerator::m() const {
    return basis() == Basis::losert ? losert_mode().m : plancherel_mode().m;
}

std::string KMGenerator::str() const {
    std::ostringstream os;
    os << "T" << a << "[";
    if (basis() == Basis::losert) {
        const auto& l = losert_mode();
        os << l.n << "," << l.m << "," << l.k;
    } else {
        const auto& p = plancherel_mode();
        os << p.n << "," << p.label.str() << "," << p.m;
    }
    os << "]";
    return os.str();
}

bool GeneratorLess::operator()(const KMGenerator& x, const KMGenerator& y) const {
    if (x.a != y.a) return x.a < y.a;
    if (x.mode.index() != y.mode.index()) return x.mode.index() < y.mode.index();
    if (x.basis() == Basis::losert) return x.losert_mode() < y.losert_mode();
    const auto& p = x.plancherel_mode();
    const auto& q = y.plancherel_mode();
    return std::tuple(p.n, p.m, label_key(p.label)) < std::tuple(q.n, q.m, label_key(q.label));
}

KMElement KMElement::generator(const KMGenerator& g, cplx coef) {
    KMElement e;
    e.add(g, coef);
    return e;
}

void KMElement::add(const KMGenerator& g, cplx coef) {
    if (coef == 0.0) return;
    terms[g] += coef;
}

KMElement& KMElement::operator+=(const KMElement& o) {
    for (const auto& [g, v] : o.terms) add(g, v);
    c_L += o.c_L;
    c_R += o.c_R;
    l0 += o.l0;
    r0 += o.r0;
    truncation = std::max(truncation, o.truncation);
    return *this;
}

KMElement KMElement::operator*(cplx s) const {
    KMElement e = *this;
    for (auto& [g, v] : e.terms) v *= s;
    e.c_L *= s;
    e.c_R *= s;
    e.l0 *= s;
    e.r0 *= s;
    return e;
}

double KMElement::norm() const {
    double s = std::norm(c_L) + std::norm(c_R) + std::norm(l0) + std::norm(r0);
    for (const auto& [g, v] : terms) s += std::norm(v);
    return std::sqrt(s);
}

std::optional<Basis> KMElement::basis() const {
    std::optional<Basis> b;
    for (const auto& [g, v] : terms) {
        if (b && *b != g.basis()) throw InvalidInput("KMElement: generators from both bases");
        b = g.basis();
    }
    return b;
}

KMContext KMContext::make(LieAlgebraSpec alg, CentralCharges charges, int k_max) {
    if (k_max < 0) throw InvalidInput("KMContext: k_max must be nonnegative");
    Eigen::MatrixXcd g = killing_form(alg);
    return KMContext{std::move(alg), std::move(g), charges, k_max};
}

std::size_t KMContext::sigma_index(double sigma) const {
    const auto it = std::lower_bound(grid.nodes.begin(), grid.nodes.end(), sigma);
    if (it == grid.nodes.end() || *it != sigma) throw InvalidInput("continuous mode is not on the sigma grid");
    return static_cast<std::size_t>(it - grid.nodes.begin());
}

CoefficientTable<LosertIndex> mode_product_losert(const LosertIndex& i, const LosertIndex& j, int k_max,
                                                  double tol) {
    if (k_max < 0) throw InvalidInput("mode_product_losert: k_max must be nonnegative");
    // The product is commutative; cache under a canonical order.
    const auto [p, q] = j < i ? std::pair(j, i) : std::pair(i, j);
    const ProductKey key{p.n.twice(), p.m.twice(), p.k, q.n.twice(), q.m.twice(), q.k, k_max};
    const auto t = product_cache().get(key, [&] { return compute_product(p, q, k_max); });
    if (t.residual > tol) throw TruncationError("mode_product_losert: expansion truncated at k_max", t.residual);
    return t;
}

GroupFunction mode_function_product(const PlancherelMode& a, const PlancherelMode& b) {
    if (a.label.is_continuous() && b.label.is_continuous())
        throw Unsupported("product of two continuous-series elements has no convergent projection");
    return product(mode_function(a), mode_function(b));
}

CGExpansion cg_project(const PlancherelMode& a, const PlancherelMode& b, const SigmaGrid& grid) {
    const GroupFunction f = mode_function_product(a, b);
    const CGKey key{a.n.twice(), a.m.twice(), label_key(a.label), b.n.twice(), b.m.twice(), label_key(b.label),
                    grid.sigma_max, grid.size()};
    return cg_cache().get(key, [&] {
        const PlancherelCoefficients c =
            analyze(f, max(abs(f.n()), abs(f.m())), grid, transform_rule(), Exec::serial);
        return CGExpansion{c.n, c.m, c.discrete, c.continuous};
    });
}

cplx cg_coefficient(const PlancherelMode& a, const PlancherelMode& b, const RepLabel& target) {
    const GroupFunction f = mode_function_product(a, b);
    if (!weight_support(target, f.n()) || !weight_support(target, f.m())) return 0.0;
    return scalar_product(mode_function(PlancherelMode{f.n(), target, f.m()}), f, transform_rule());
}

double cg_reconstruction_error(const PlancherelMode& a, const PlancherelMode& b, const SigmaGrid& grid,
                               const std::vector<double>& xs) {
    const GroupFunction f = mode_function_product(a, b);
    const CGExpansion e = cg_project(a, b, grid);
    PlancherelCoefficients c{e.n, e.m, e.discrete, grid, e.continuous};
    const Eigen::VectorXcd s = synthesize_radial(c, xs);
    double err = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) err = std::max(err, std::abs(s[i] - f.radial_at(xs[i])));
    return err;
}

cplx mode_pairing(const KMGenerator& x, const KMGenerator& y, const KMContext& ctx) {
    if (x.basis() != y.basis()) throw InvalidInput("mode_pairing: generators from different bases");
    if (x.n() != -y.n() || x.m() != -y.m()) return 0.0;
    if (x.basis() == Basis::losert) return x.losert_mode().k == y.losert_mode().k ? 1.0 : 0.0;
    const auto& p = x.plancherel_mode().label;
    const auto& q = y.plancherel_mode().label;
    if (p.is_discrete() != q.is_discrete()) return 0.0;
    if (p.is_discrete())
        return p.disc().lambda == q.disc().lambda && p.disc().eta == -q.disc().eta ? 1.0 : 0.0;
    if (p.cont().sigma != q.cont().sigma) return 0.0;
    const std::size_t j = ctx.sigma_index(p.cont().sigma);
    const HalfInt eps = x.n().frac();
    const double sign = (x.m() - x.n()).to_int() % 2 == 0 ? 1.0 : -1.0;
    return sign / (ctx.grid.weights[j] * plancherel_weight(ctx.grid.nodes[j], eps));
}

cplx cocycle_omega(Side which, const KMElement& x, const KMElement& y, const KMContext& ctx) {
    const auto bx = x.basis(), by = y.basis();
    if (bx && by && *bx != *by) throw InvalidInput("cocycle_omega: elements from different bases");
    cplx s = 0.0;
    for (const auto& [gx, vx] : x.terms)
        for (const auto& [gy, vy] : y.terms) {
            const cplx g = ctx.killing(gx.a, gy.a);
            if (g == 0.0) continue;
            const cplx p = mode_pairing(gx, gy, ctx);
            if (p == 0.0) continue;
            const double grade = which == Side::L ? gx.n().value() * ctx.charges.k_L
                                                  : gx.m().value() * ctx.charges.k_R;
            s += vx * vy * grade * g * p;
        }
    return s;
}

KMElement km_bracket(const KMElement& x, const KMElement& y, const KMContext& ctx, Basis basis) {
    for (const KMElement* e : {&x, &y}) {
        const auto b = e->basis();
        if (b && *b != basis) throw InvalidInput("km_bracket: element not in the requested basis");
    }
    const LieAlgebraSpec& alg = ctx.algebra;
    const int dim = alg.dim();

    struct Pair {
        const KMGenerator* gx;
        cplx vx;
        const KMGenerator* gy;
        cplx vy;
    };
    std::vector<Pair> pairs;
    for (const auto& [gx, vx] : x.terms)
        for (const auto& [gy, vy] : y.terms) {
            if (gx.a >= dim || gy.a >= dim) throw InvalidInput("km_bracket: generator index outside the algebra");
            bool any = false;
            for (int c = 0; c < dim && !any; ++c) any = alg.f(gx.a, gy.a, c) != 0.0;
            if (any || ctx.killing(gx.a, gy.a) != 0.0) pairs.push_back({&gx, vx, &gy, vy});
        }

    // Product expansions are computed in parallel; accumulation below is serial
    // in a fixed order so the result does not depend on the thread count.
    std::vector<CoefficientTable<LosertIndex>> lb(basis == Basis::losert ? pairs.size() : 0);
    std::vector<CGExpansion> pb(basis == Basis::plancherel ? pairs.size() : 0);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        try {
            bool any = false;
            for (int c = 0; c < dim && !any; ++c) any = alg.f(pairs[i].gx->a, pairs[i].gy->a, c) != 0.0;
            if (!any) continue;
            if (basis == Basis::losert)
                lb[i] = mode_product_losert(pairs[i].gx->losert_mode(), pairs[i].gy->losert_mode(), ctx.k_max,
                                            ctx.truncation_tol);
            else
                pb[i] = cg_project(pairs[i].gx->plancherel_mode(), pairs[i].gy->plancherel_mode(), ctx.grid);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    const cplx I(0.0, 1.0);
    KMElement out;
    out.truncation = std::max(x.truncation, y.truncation);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [gx, vx, gy, vy] = pairs[i];
        for (int c = 0; c < dim; ++c) {
            const cplx f = alg.f(gx->a, gy->a, c);
            if (f == 0.0) continue;
            const cplx pre = I * f * vx * vy;
            if (basis == Basis::losert) {
                out.truncation = std::max(out.truncation, lb[i].residual);
                for (const auto& [idx, v] : lb[i].entries)
                    if (std::abs(v) > 1e-14) out.add(KMGenerator{c, idx}, pre * v);
            } else {
                const CGExpansion& e = pb[i];
                for (const auto& d : e.discrete)
                    if (std::abs(d.value) > 1e-14)
                        out.add(KMGenerator::plancherel(c, e.n, d.label, e.m), pre * d.value);
                const HalfInt eps = e.n.frac();
                for (std::size_t j = 0; j < e.continuous.size(); ++j) {
                    const double s = ctx.grid.nodes[j];
                    const cplx v = ctx.grid.weights[j] * plancherel_weight(s, eps) * e.continuous[j];
                    if (std::abs(v) > 1e-14)
                        out.add(KMGenerator::plancherel(c, e.n, RepLabel::continuous(s, eps), e.m), pre * v);
                }
            }
        }
        const cplx g = ctx.killing(gx->a, gy->a);
        if (g != 0.0) {
            const cplx p = mode_pairing(*gx, *gy, ctx);
            if (p != 0.0) {
                out.c_L += vx * vy * gx->n().value() * ctx.charges.k_L * g * p;
                out.c_R += vx * vy * gx->m().value() * ctx.charges.k_R * g * p;
            }
        }
    }
    // [L0, T_{n..}] = n T, [R0, T_{..m}] = m T.
    for (const auto& [gy, vy] : y.terms) out.add(gy, (x.l0 * gy.n().value() + x.r0 * gy.m().value()) * vy);
    for (const auto& [gx, vx] : x.terms) out.add(gx, -(y.l0 * gx.n().value() + y.r0 * gx.m().value()) * vx);
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second == 0.0 ? out.terms.erase(it) : std::next(it);
    return out;
}

double verify_cocycle(Side which, const KMElement& x, const KMElement& y, const KMElement& z,
                      const KMContext& ctx, Basis basis) {
    const cplx s = cocycle_omega(which, km_bracket(x, y, ctx, basis), z, ctx) +
                   cocycle_omega(which, km_bracket(y, z, ctx, basis), x, ctx) +
                   cocycle_omega(which, km_bracket(z, x, ctx, basis), y, ctx);
    return std::abs(s);
}

double jacobi_residual(const KMElement& x, const KMElement& y, const KMElement& z, const KMContext& ctx,
                       Basis basis) {
    const KMElement s = km_bracket(km_bracket(x, y, ctx, basis), z, ctx, basis) +
                        km_bracket(km_bracket(y, z, ctx, basis), x, ctx, basis) +
                        km_bracket(km_bracket(z, x, ctx, basis), y, ctx, basis);
    return s.norm();
}

HalfInt grading(Op op, const KMGenerator& g) {
    if (op == Op::L0) return g.n();
    if (op == Op::R0) return g.m();
    throw InvalidInput("grading: only L0 and R0 are grading operators");
}

KMElement losert_to_plancherel(const KMElement& x, const KMContext& ctx) {
    if (const auto b = x.basis(); b && *b != Basis::losert) throw InvalidInput("losert_to_plancherel: not in LB");
    KMElement out;
    out.c_L = x.c_L;
    out.c_R = x.c_R;
    out.l0 = x.l0;
    out.r0 = x.r0;
    out.truncation = x.truncation;
    for (const auto& [g, v] : x.terms) {
        const auto& [n, m, k] = g.losert_mode();
        if (k < classify(n, m).k_min) {
            out.add(KMGenerator::plancherel(g.a, n, discrete_partner(n, m, k), m), v * sign_of_partner(n, m, k));
            continue;
        }
        const auto f = basis_conversion(n, m, k, ctx.grid);
        const HalfInt eps = n.frac();
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double s = ctx.grid.nodes[j];
            out.add(KMGenerator::plancherel(g.a, n, RepLabel::continuous(s, eps), m),
                    v * ctx.grid.weights[j] * plancherel_weight(s, eps) * f[j]);
        }
    }
    return out;
}

KMElement plancherel_to_losert(const KMElement& x, const KMContext& ctx) {
    if (const auto b = x.basis(); b && *b != Basis::plancherel)
        throw InvalidInput("plancherel_to_losert: not in PB");
    KMElement out;
    out.c_L = x.c_L;
    out.c_R = x.c_R;
    out.l0 = x.l0;
    out.r0 = x.r0;
    out.truncation = x.truncation;
    // Continuous entries grouped by (a, n, m) as sample vectors on the grid.
    std::map<std::tuple<int, int, int>, std::vector<cplx>> cont;
    for (const auto& [g, v] : x.terms) {
        const auto& p = g.plancherel_mode();
        if (p.label.is_discrete()) {
            const HalfInt lo = min(abs(p.n), abs(p.m));
            const int k = (lo - p.label.disc().lambda).to_int();
            out.add(KMGenerator::losert(g.a, p.n, p.m, k), v * sign_of_partner(p.n, p.m, k));
            continue;
        }
        auto& samples = cont[{g.a, p.n.twice(), p.m.twice()}];
        samples.resize(ctx.grid.size(), 0.0);
        samples[ctx.sigma_index(p.label.cont().sigma)] += v;
    }
    for (const auto& [key, c] : cont) {
        const auto [a, tn, tm] = key;
        const HalfInt n = HalfInt::from_twice(tn), m = HalfInt::from_twice(tm);
        for (int k = classify(n, m).k_min; k <= ctx.k_max; ++k) {
            const auto f = basis_conversion(n, m, k, ctx.grid);
            cplx s = 0.0;
            for (std::size_t j = 0; j < f.size(); ++j) s += c[j] * std::conj(f[j]);
            out.add(KMGenerator::losert(a, n, m, k), s);
        }
    }
    return out;
}

RootData RootData::sl2_ladder() { return RootData{{{0}, {1}, {-1}}}; }

bool RootData::is_root(const std::vector<int>& r) const {
    for (const auto& x : roots) {
        if (x != r) continue;
        for (int v : x)
            if (v != 0) return true;
    }
    return false;
}

std::vector<KMGenerator> root_space(const LieAlgebraSpec& alg, const RootData& rd, const std::vector<int>& root,
                                    HalfInt n, HalfInt m, int k_max) {
    if (static_cast<int>(rd.roots.size()) != alg.dim()) throw InvalidInput("root_space: root data size mismatch");
    std::vector<KMGenerator> out;
    for (int a = 0; a < alg.dim(); ++a)
        if (rd.roots[a] == root)
            for (int k = 0; k <= k_max; ++k) out.push_back(KMGenerator::losert(a, n, m, k));
    return out;
}

double containment_violation(const KMContext& ctx, const RootData& rd, const std::vector<int>& alpha, HalfInt n,
                             HalfInt m, const std::vector<int>& beta, HalfInt p, HalfInt q, int k_max) {
    if (alpha.size() != beta.size()) throw InvalidInput("containment_violation: root rank mismatch");
    KMElement x, y;
    for (const auto& g : root_space(ctx.algebra, rd, alpha, n, m, k_max)) x.add(g, 1.0);
    for (const auto& g : root_space(ctx.algebra, rd, beta, p, q, k_max)) y.add(g, 1.0);
    std::vector<int> sum(alpha.size());
    bool zero = true;
    for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] = alpha[i] + beta[i];
        zero = zero && sum[i] == 0;
    }
    const bool allowed_root = zero || rd.is_root(sum);
    const KMElement z = km_bracket(x, y, ctx, Basis::losert);
    double worst = 0.0;
    for (const auto& [g, v] : z.terms) {
        const bool inside = allowed_root && rd.roots[g.a] == sum && g.n() == n + p && g.m() == m + q;
        if (!inside) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

nlohmann::ordered_json to_json(const KMElement& x, const LieAlgebraSpec& alg) {
    nlohmann::ordered_json out;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [g, v] : x.terms) {
        nlohmann::ordered_json t;
        t["generator"] = alg.names().at(g.a);
        t["n"] = g.n().value();
        t["m"] = g.m().value();
        if (g.basis() == Basis::losert) t["k"] = g.losert_mode().k;
        else t["label"] = g.plancherel_mode().label.str();
        t["re"] = v.real();
        t["im"] = v.imag();
        terms.push_back(t);
    }
    out["terms"] = terms;
    out["c_L"] = {x.c_L.real(), x.c_L.imag()};
    out["c_R"] = {x.c_R.real(), x.c_R.imag()};
    out["l0"] = {x.l0.real(), x.l0.imag()};
    out["r0"] = {x.r0.real(), x.r0.imag()};
    out["truncation_residual"] = x.truncation;
    return out;
}

void clear_structure_cache() {
    product_cache().clear();
    cg_cache().clear();
}

}  // namespace sl2r

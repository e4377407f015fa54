#include "sl2r/verify.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sl2r/algebra.hpp"
#include "sl2r/error.hpp"
#include "sl2r/kac_moody.hpp"
#include "sl2r/kernels.hpp"
#include "sl2r/losert.hpp"
#include "sl2r/matrix_elements.hpp"
#include "sl2r/plancherel.hpp"

namespace sl2r {

bool Check::pass() const { return std::isfinite(value) && std::abs(value) <= tolerance; }

namespace {

struct Element {
    RepLabel label;
    HalfInt n, m;
    std::string str() const { return label.str() + " (" + n.str() + "," + m.str() + ")"; }
};

double tolerance_or(const VerifyConfig& cfg, double fallback) { return cfg.tol ? *cfg.tol : fallback; }

std::vector<Element> default_elements() {
    return {
        {RepLabel::discrete(1, +1), 1, 1},
        {RepLabel::discrete(1, +1), 1, 3},
        {RepLabel::discrete(half(3), +1), half(5), half(3)},
        {RepLabel::discrete(2, -1), -2, -3},
        {RepLabel::discrete(half(3), -1), half(-3), half(-5)},
        {RepLabel::discrete(2, +1), 4, 2},
        {RepLabel::continuous(0.7, 0), 0, 1},
        {RepLabel::continuous(1.3, half(1)), half(1), half(-1)},
        {RepLabel::continuous(2.0, 0), -1, 1},
        {RepLabel::continuous(0.5, half(1)), half(3), half(3)},
    };
}

// Weights next to the edge of a discrete label (or around zero for continuous ones).
std::vector<HalfInt> edge_weights(const RepLabel& L, int count) {
    std::vector<HalfInt> out;
    if (L.is_discrete()) {
        const auto& d = L.disc();
        for (int i = 0; i < count; ++i) out.push_back(d.eta * (d.lambda + HalfInt(i)));
    } else {
        for (int i = 0; i < count; ++i) out.push_back(L.parity() + HalfInt(i - count / 2));
    }
    return out;
}

std::vector<Element> elements_for(const VerifyConfig& cfg) {
    if (!cfg.rep) return default_elements();
    std::vector<Element> out;
    for (HalfInt n : edge_weights(*cfg.rep, 3))
        for (HalfInt m : edge_weights(*cfg.rep, 3)) out.push_back({*cfg.rep, n, m});
    return out;
}

std::vector<GroupPoint> random_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rho(0.05, 3.0), ang(0.0, 2.0 * std::numbers::pi);
    std::vector<GroupPoint> out;
    for (int i = 0; i < count; ++i) {
        const double r = rho(rng), a = ang(rng), b = ang(rng);
        out.push_back(GroupPoint::make(r, a, b));
    }
    return out;
}

std::vector<HalfInt> half_range(std::pair<HalfInt, HalfInt> r) {
    std::vector<HalfInt> out;
    for (HalfInt h = r.first; h <= r.second; h += half(1)) out.push_back(h);
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::vector<Check> verify_orthonormality(const VerifyConfig& cfg) {
    const QuadratureRule rule = make_radial_rule(cfg.x_max, cfg.quad_order);
    std::vector<Check> out;
    for (int eta : {+1, -1})
        for (HalfInt cls : {HalfInt(0), half(1)}) {
            std::vector<GroupFunction> fs;
            for (HalfInt l = cls + HalfInt(1); l <= cfg.lambda_max; l += HalfInt(1)) {
                const RepLabel L = RepLabel::discrete(l, eta);
                for (HalfInt n : edge_weights(L, 4))
                    for (HalfInt m : edge_weights(L, 4)) fs.push_back(psi(L, n, m));
            }
            if (fs.empty()) continue;
            const Eigen::MatrixXcd g = gram(fs, fs, rule, Exec::parallel);
            const double res =
                (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
            out.push_back({std::string("orthonormality eta=") + (eta > 0 ? "+" : "-") +
                               (cls.is_integer() ? " integer" : " half-integer") + " lambda<=" +
                               cfg.lambda_max.str(),
                           res, tolerance_or(cfg, 1e-8)});
        }
    return out;
}

std::vector<Check> verify_eigen(const VerifyConfig& cfg) {
    const auto points = random_points(cfg.seed, 20);
    std::vector<Check> out;
    for (const auto& e : elements_for(cfg)) {
        const GroupFunction f = psi(e.label, e.n, e.m);
        const GroupFunction l0 = apply_operator(Op::L0, f, DiffMode::finite_difference);
        const GroupFunction r0 = apply_operator(Op::R0, f, DiffMode::finite_difference);
        const GroupFunction q = apply_operator(Op::Casimir, f, DiffMode::finite_difference);
        const double qv = casimir_eigenvalue(e.label);
        double rl = 0.0, rr = 0.0, rq = 0.0, scale = 0.0;
        for (const auto& p : points) {
            const cplx v = f(p);
            rl = std::max(rl, std::abs(l0(p) - e.n.value() * v));
            rr = std::max(rr, std::abs(r0(p) - e.m.value() * v));
            rq = std::max(rq, std::abs(q(p) - qv * v));
            scale = std::max(scale, std::abs(v));
        }
        out.push_back({"eigen L0 " + e.str(), rl, tolerance_or(cfg, 1e-6)});
        out.push_back({"eigen R0 " + e.str(), rr, tolerance_or(cfg, 1e-6)});
        out.push_back({"eigen Q " + e.str() + " relative", rq / scale, tolerance_or(cfg, 1e-6)});
    }
    return out;
}

std::vector<Check> verify_ladder(const VerifyConfig& cfg) {
    const auto points = random_points(cfg.seed + 1, 20);
    std::vector<Check> out;
    for (const auto& e : elements_for(cfg)) {
        const GroupFunction f = psi(e.label, e.n, e.m);
        for (Op op : {Op::Lplus, Op::Lminus, Op::Rplus, Op::Rminus}) {
            const auto [dn, dm] = op_shift(op);
            const int dir = dn != 0 ? dn : dm;
            const double c = ladder_coeff(e.label, dn != 0 ? e.n : e.m, dir);
            const GroupFunction g = apply_operator(op, f, DiffMode::analytic);
            const HalfInt n2 = e.n + HalfInt(dn), m2 = e.m + HalfInt(dm);
            const bool target = weight_support(e.label, n2) && weight_support(e.label, m2);
            double res = 0.0;
            for (const auto& p : points) {
                const cplx expect = target ? c * psi(e.label, n2, m2)(p) : cplx(0.0);
                res = std::max(res, std::abs(g(p) - expect));
            }
            out.push_back({"ladder " + op_name(op) + " " + e.str(), res, tolerance_or(cfg, 1e-7)});
        }
    }
    return out;
}

std::vector<Check> verify_gram(const VerifyConfig& cfg) {
    const QuadratureRule rule = make_radial_rule(cfg.x_max, cfg.quad_order);
    std::vector<Check> out;
    for (HalfInt n : half_range(cfg.n_range))
        for (HalfInt m : half_range(cfg.m_range)) {
            if (!same_class(n, m)) continue;
            const Eigen::MatrixXd g = gram_matrix(n, m, cfg.k_max, rule);
            const double res = (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
            out.push_back({"gram (" + n.str() + "," + m.str() + ") k<=" + std::to_string(cfg.k_max), res,
                           tolerance_or(cfg, 1e-8)});
        }
    return out;
}

namespace {

// Random sl(2)-valued elements over Losert modes |n|,|m| <= 2, k <= 3. One
// term of each carries grades g1, g2 and -(g1+g2) so that every cyclic term
// of the cocycle identity can be nonzero.
std::array<KMElement, 3> random_triple(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> grade(-2, 2), small(-1, 1), kk(0, 3), gen(0, 2);
    std::normal_distribution<double> nd;
    auto coef = [&] { return cplx(nd(rng), nd(rng)); };
    std::array<KMElement, 3> t;
    for (auto& e : t)
        for (int i = 0; i < 2; ++i) e.add(KMGenerator::losert(gen(rng), grade(rng), grade(rng), kk(rng)), coef());
    const int n1 = small(rng), m1 = small(rng), n2 = small(rng), m2 = small(rng);
    t[0].add(KMGenerator::losert(gen(rng), n1, m1, kk(rng)), coef());
    t[1].add(KMGenerator::losert(gen(rng), n2, m2, kk(rng)), coef());
    t[2].add(KMGenerator::losert(gen(rng), -n1 - n2, -m1 - m2, kk(rng)), coef());
    return t;
}

}  // namespace

std::vector<Check> verify_jacobi(const VerifyConfig& cfg) {
    std::vector<Check> out;
    out.push_back({"jacobi sl2 ladder basis", check_jacobi(LieAlgebraSpec::sl2_ladder()), tolerance_or(cfg, 1e-14)});
    out.push_back({"jacobi sl2 hermitian basis", check_jacobi(LieAlgebraSpec::sl2_hermitian()),
                   tolerance_or(cfg, 1e-14)});
    out.push_back({"antisymmetry sl2 ladder basis", check_antisymmetry(LieAlgebraSpec::sl2_ladder()),
                   tolerance_or(cfg, 1e-14)});
    const KMContext ctx = KMContext::make(LieAlgebraSpec::sl2_ladder(), {cfg.k_L, cfg.k_R}, 12);
    std::mt19937_64 rng(cfg.seed);
    for (int trial = 0; trial < 3; ++trial) {
        const auto [x, y, z] = random_triple(rng);
        out.push_back({"jacobi km losert trial " + std::to_string(trial), jacobi_residual(x, y, z, ctx, Basis::losert),
                       tolerance_or(cfg, 1e-5)});
    }
    return out;
}

std::vector<Check> verify_cocycle_suite(const VerifyConfig& cfg) {
    std::vector<Check> out;
    const KMContext ctx = KMContext::make(LieAlgebraSpec::sl2_ladder(), {cfg.k_L, cfg.k_R}, 12);
    std::mt19937_64 rng(cfg.seed);
    for (int trial = 0; trial < 3; ++trial) {
        const auto [x, y, z] = random_triple(rng);
        const std::string t = " trial " + std::to_string(trial);
        out.push_back({"cocycle L" + t, verify_cocycle(Side::L, x, y, z, ctx, Basis::losert), tolerance_or(cfg, 1e-6)});
        out.push_back({"cocycle R" + t, verify_cocycle(Side::R, x, y, z, ctx, Basis::losert), tolerance_or(cfg, 1e-6)});
        out.push_back({"omega antisymmetry" + t,
                       std::abs(cocycle_omega(Side::L, x, y, ctx) + cocycle_omega(Side::L, y, x, ctx)) +
                           std::abs(cocycle_omega(Side::R, x, y, ctx) + cocycle_omega(Side::R, y, x, ctx)),
                       tolerance_or(cfg, 0.0)});
        const KMElement b = km_bracket(x, y, ctx, Basis::losert);
        out.push_back({"central term equals omega" + t,
                       std::abs(b.c_L - cocycle_omega(Side::L, x, y, ctx)) +
                           std::abs(b.c_R - cocycle_omega(Side::R, x, y, ctx)),
                       tolerance_or(cfg, 0.0)});
    }
    // Printed PB value ω_L(T^a_{1,(1,+),1}, T^{a'}_{-1,(1,-),-1}) = k_L g^{aa'}.
    double worst = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const auto x = KMElement::generator(KMGenerator::plancherel(a, 1, RepLabel::discrete(1, +1), 1));
            const auto y = KMElement::generator(KMGenerator::plancherel(b, -1, RepLabel::discrete(1, -1), -1));
            worst = std::max(worst, std::abs(cocycle_omega(Side::L, x, y, ctx) - cfg.k_L * ctx.killing(a, b)));
        }
    out.push_back({"omega_L plancherel discrete table", worst, tolerance_or(cfg, 1e-14)});
    return out;
}

std::vector<Check> verify_parseval(const VerifyConfig& cfg) {
    const int panels = std::max(1, static_cast<int>(std::ceil(8.0 * cfg.sigma_max / 12.0)));
    const SigmaGrid grid = SigmaGrid::make(cfg.sigma_max, panels, 24);
    const GroupFunction gaussian(1, 1, std::make_shared<FunctionProfile>([](double x) {
                                     const double r = 0.5 * std::acosh(x);
                                     return cplx(std::exp(-2.0 * r * r));
                                 }),
                                 8.0);
    const std::vector<std::pair<std::string, GroupFunction>> fs = {
        {"Phi(1,0,0)", phi(1, 0, 0)}, {"Phi(3/2,1/2,0)", phi(half(3), half(1), 0)}, {"gaussian (1,1)", gaussian}};
    std::vector<Check> out;
    for (const auto& [name, f] : fs) {
        const RoundTrip rt = round_trip(f, max(cfg.lambda_max, HalfInt(4)), grid);
        out.push_back({"round trip " + name + " relative L2", rt.relative_l2_error, tolerance_or(cfg, 1e-3)});
        out.push_back({"parseval " + name + " relative", std::abs(rt.parseval_sum - rt.norm2) / rt.norm2,
                       tolerance_or(cfg, 1e-3)});
    }
    out.push_back({"line parseval (1,0,0) sigma_max=" + fmt(cfg.sigma_max),
                   line_parseval(1, 0, 0, grid) - 1.0, tolerance_or(cfg, 1e-3)});
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"orthonormality", "eigen",   "ladder",  "gram",
                                                   "jacobi",         "cocycle", "parseval"};
    return names;
}

std::vector<Check> run_suite(const std::string& name, const VerifyConfig& cfg) {
    if (name == "orthonormality") return verify_orthonormality(cfg);
    if (name == "eigen") return verify_eigen(cfg);
    if (name == "ladder") return verify_ladder(cfg);
    if (name == "gram") return verify_gram(cfg);
    if (name == "jacobi") return verify_jacobi(cfg);
    if (name == "cocycle") return verify_cocycle_suite(cfg);
    if (name == "parseval") return verify_parseval(cfg);
    throw InvalidInput("unknown verification suite: " + name);
}

nlohmann::ordered_json checks_to_json(const std::vector<Check>& checks) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
    nlohmann::ordered_json out;
    out["checks"] = arr;
    return out;
}

bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass()) return false;
    return true;
}

}  // namespace sl2r

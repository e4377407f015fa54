// sl2r: tabulate matrix elements and basis functions, run verification
// suites, compute Plancherel transforms, Kac-Moody brackets and
// Clebsch-Gordan expansions.
//
// Exit codes: 0 all checks pass, 1 a numeric check failed, 2 bad input.

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sl2r/error.hpp"
#include "sl2r/kac_moody.hpp"
#include "sl2r/losert.hpp"
#include "sl2r/matrix_elements.hpp"
#include "sl2r/plancherel.hpp"
#include "sl2r/verify.hpp"

using namespace sl2r;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string lambda_max = "2";
    double sigma_max = 12.0;
    int quad_order = 32;
    double x_max = 1e10;
    int k_max = 6;
    std::string n_range = "-4:4";
    std::string m_range = "-4:4";
    std::optional<double> tol;
    double k_L = 1.0, k_R = 1.0;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 1;
    std::string rep;

    // Single-element selectors.
    std::string n = "0", m = "0";
    int k = 0;
    std::string op = "L+";
    std::string function = "phi";
    double width = 1.0;
    double rho_max = 3.0;
    int points = 7;
    std::vector<std::string> x_terms, y_terms;
    std::string cg_a, cg_b;
    std::string suite;
};

struct Report {
    std::vector<Check> checks;
    json data;
    // CSV rendering of the data table; checks are rendered when unset.
    std::function<void(std::ostream&)> csv;
};

std::pair<HalfInt, HalfInt> parse_range(const std::string& s) {
    const auto c = s.find(':');
    if (c == std::string::npos) throw InvalidInput("range must be lo:hi, got '" + s + "'");
    const HalfInt lo = HalfInt::parse(s.substr(0, c)), hi = HalfInt::parse(s.substr(c + 1));
    if (hi < lo) throw InvalidInput("empty range '" + s + "'");
    return {lo, hi};
}

std::vector<HalfInt> range_values(const std::string& s) {
    const auto [lo, hi] = parse_range(s);
    std::vector<HalfInt> out;
    for (HalfInt h = lo; h <= hi; h += half(1)) out.push_back(h);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

VerifyConfig make_config(const Options& o) {
    VerifyConfig cfg;
    cfg.lambda_max = HalfInt::parse(o.lambda_max);
    cfg.sigma_max = o.sigma_max;
    cfg.quad_order = o.quad_order;
    cfg.x_max = o.x_max;
    cfg.k_max = o.k_max;
    cfg.n_range = parse_range(o.n_range);
    cfg.m_range = parse_range(o.m_range);
    cfg.tol = o.tol;
    cfg.k_L = o.k_L;
    cfg.k_R = o.k_R;
    cfg.seed = o.seed;
    if (!o.rep.empty()) cfg.rep = RepLabel::parse(o.rep);
    if (cfg.tol && !(*cfg.tol > 0.0)) throw InvalidInput("--tol must be > 0");
    if (!(cfg.sigma_max > 0.0) || !(cfg.x_max > 1.0) || cfg.quad_order < 2 || cfg.k_max < 0)
        throw InvalidInput("numeric parameters out of range");
    return cfg;
}

double tol_or(const Options& o, double fallback) { return o.tol ? *o.tol : fallback; }

SigmaGrid grid_for(const Options& o) {
    const int panels = std::max(1, static_cast<int>(std::ceil(8.0 * o.sigma_max / 12.0)));
    return SigmaGrid::make(o.sigma_max, panels, 24);
}

std::vector<GroupPoint> rho_points(const Options& o) {
    if (o.points < 1 || !(o.rho_max >= 0.0)) throw InvalidInput("--points must be >= 1 and --rho-max >= 0");
    std::vector<GroupPoint> pts;
    for (int i = 0; i < o.points; ++i)
        pts.push_back(GroupPoint::make(o.points == 1 ? 0.0 : o.rho_max * i / (o.points - 1), 0.0, 0.0));
    return pts;
}

Check finite_check(const std::string& name, const std::vector<cplx>& values) {
    double bad = 0;
    for (const cplx& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad += 1;
    return {name, bad, 0.0};
}

// Test function for the transform commands.
GroupFunction make_function(const Options& o) {
    const HalfInt n = HalfInt::parse(o.n), m = HalfInt::parse(o.m);
    if (o.function == "phi") return phi(n, m, o.k);
    if (o.function == "psi") {
        if (o.rep.empty()) throw InvalidInput("--function psi needs --rep");
        const RepLabel L = RepLabel::parse(o.rep);
        if (!L.is_discrete()) throw NonNormalisable("continuous matrix elements have no Plancherel transform");
        return psi(L, n, m);
    }
    if (o.function == "gaussian") {
        const double w = o.width;
        if (!(w > 0.0)) throw InvalidInput("--width must be > 0");
        return GroupFunction(n, m, std::make_shared<FunctionProfile>([w](double x) {
                                 const double r = 0.5 * std::acosh(x);
                                 return cplx(std::exp(-2.0 * r * r / (w * w)));
                             }),
                             8.0);
    }
    throw InvalidInput("unknown --function '" + o.function + "' (phi, psi, gaussian)");
}

KMElement parse_element(const std::vector<std::string>& specs, const LieAlgebraSpec& alg) {
    if (specs.empty()) throw InvalidInput("bracket needs at least one term per element");
    KMElement x;
    for (const auto& s : specs) {
        const auto f = split(s, ':');
        if (f.size() != 4 && f.size() != 5)
            throw InvalidInput("generator must be NAME:n:m:k[:coef], got '" + s + "'");
        const int a = alg.index_of(f[0]);
        double c = 1.0;
        if (f.size() == 5) {
            try {
                c = std::stod(f[4]);
            } catch (const std::exception&) {
                throw InvalidInput("bad coefficient in '" + s + "'");
            }
        }
        int k = 0;
        try {
            k = std::stoi(f[3]);
        } catch (const std::exception&) {
            throw InvalidInput("bad k in '" + s + "'");
        }
        x.add(KMGenerator::losert(a, HalfInt::parse(f[1]), HalfInt::parse(f[2]), k), c);
    }
    return x;
}

PlancherelMode parse_mode(const std::string& s) {
    const auto f = split(s, '/');
    if (f.size() != 3) throw InvalidInput("mode must be n/LABEL/m, got '" + s + "'");
    return {HalfInt::parse(f[0]), RepLabel::parse(f[1]), HalfInt::parse(f[2])};
}

void checks_csv(std::ostream& os, const std::vector<Check>& checks) {
    os << "name,value,tolerance,pass\n" << std::setprecision(17);
    for (const auto& c : checks)
        os << '"' << c.name << "\"," << c.value << ',' << c.tolerance << ',' << (c.pass() ? "true" : "false") << '\n';
}

// ---- commands ----

Report cmd_tabulate_psi(const Options& o) {
    if (o.rep.empty()) throw InvalidInput("tabulate psi needs --rep");
    const auto rows =
        tabulate_psi({RepLabel::parse(o.rep)}, range_values(o.n_range), range_values(o.m_range), rho_points(o));
    std::vector<cplx> vals;
    for (const auto& r : rows) vals.push_back(r.value);
    Report rep{{finite_check("finite values", vals)}, to_json(rows), {}};
    rep.csv = [rows](std::ostream& os) { write_csv(os, rows); };
    return rep;
}

Report cmd_tabulate_phi(const Options& o) {
    struct Row {
        HalfInt n, m;
        int k;
        double rho;
        cplx value;
    };
    std::vector<Row> rows;
    const auto pts = rho_points(o);
    for (HalfInt n : range_values(o.n_range))
        for (HalfInt m : range_values(o.m_range)) {
            if (!same_class(n, m)) continue;
            for (int k = 0; k <= o.k_max; ++k) {
                const GroupFunction f = phi(n, m, k);
                for (const auto& p : pts) rows.push_back({n, m, k, p.rho, f.radial_at(p.x())});
            }
        }
    json data = json::array();
    std::vector<cplx> vals;
    for (const auto& r : rows) {
        data.push_back({{"n", r.n.value()}, {"m", r.m.value()}, {"k", r.k}, {"rho", r.rho}, {"re", r.value.real()},
                        {"im", r.value.imag()}});
        vals.push_back(r.value);
    }
    Report rep{{finite_check("finite values", vals)}, data, {}};
    rep.csv = [rows](std::ostream& os) {
        os << "n,m,k,rho,re,im\n" << std::setprecision(17);
        for (const auto& r : rows)
            os << r.n.value() << ',' << r.m.value() << ',' << r.k << ',' << r.rho << ',' << r.value.real() << ','
               << r.value.imag() << '\n';
    };
    return rep;
}

Report cmd_tabulate_ladder(const Options& o) {
    const Op op = parse_op(o.op);
    const HalfInt n = HalfInt::parse(o.n), m = HalfInt::parse(o.m);
    const double tol = tol_or(o, 1e-6);
    // Residuals above tol are reported as a failing check rather than thrown.
    const auto table = ladder_on_phi(op, n, m, o.k, 1e300);
    Report rep{{{"ladder " + o.op + " on Phi(" + n.str() + "," + m.str() + "," + std::to_string(o.k) + ") residual",
                 table.residual, tol}},
               to_json(op, LosertIndex{n, m, o.k}, table),
               {}};
    rep.csv = [table](std::ostream& os) {
        os << "n,m,k,re,im\n" << std::setprecision(17);
        for (const auto& [i, v] : table.entries)
            os << i.n.value() << ',' << i.m.value() << ',' << i.k << ',' << v.real() << ',' << v.imag() << '\n';
    };
    return rep;
}

Report cmd_verify(const Options& o) {
    const VerifyConfig cfg = make_config(o);
    std::vector<Check> checks;
    if (o.suite == "all") {
        for (const auto& s : suite_names()) {
            auto c = run_suite(s, cfg);
            checks.insert(checks.end(), c.begin(), c.end());
        }
    } else {
        checks = run_suite(o.suite, cfg);
    }
    return {checks, nullptr, {}};
}

Report cmd_analyze(const Options& o) {
    const GroupFunction f = make_function(o);
    const auto c = analyze(f, HalfInt::parse(o.lambda_max), grid_for(o));
    const double norm2 = scalar_product(f, f, losert_rule()).real();
    const double ps = c.parseval_sum();
    Report rep{{{"parseval relative", std::abs(ps - norm2) / norm2, tol_or(o, 1e-3)}}, c.to_json(), {}};
    rep.csv = [c](std::ostream& os) {
        os << "kind,label,sigma,re,im\n" << std::setprecision(17);
        for (const auto& d : c.discrete)
            os << "discrete," << d.label.str() << ",," << d.value.real() << ',' << d.value.imag() << '\n';
        for (std::size_t j = 0; j < c.grid.size(); ++j)
            os << "continuous,," << c.grid.nodes[j] << ',' << c.continuous[j].real() << ','
               << c.continuous[j].imag() << '\n';
    };
    return rep;
}

Report cmd_synthesize(const Options& o) {
    const GroupFunction f = make_function(o);
    const SigmaGrid grid = grid_for(o);
    const HalfInt lmax = HalfInt::parse(o.lambda_max);
    const RoundTrip rt = round_trip(f, lmax, grid);
    const auto c = analyze(f, lmax, grid);
    const auto pts = rho_points(o);
    std::vector<double> xs;
    for (const auto& p : pts) xs.push_back(p.x());
    const Eigen::VectorXcd s = synthesize_radial(c, xs);
    json data = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const cplx exact = f.radial_at(xs[i]);
        data.push_back({{"rho", pts[i].rho}, {"re", s[i].real()}, {"im", s[i].imag()},
                        {"exact_re", exact.real()}, {"exact_im", exact.imag()}});
    }
    Report rep{{{"round trip relative L2", rt.relative_l2_error, tol_or(o, 1e-3)},
                {"parseval relative", std::abs(rt.parseval_sum - rt.norm2) / rt.norm2, tol_or(o, 1e-3)}},
               data,
               {}};
    rep.csv = [data](std::ostream& os) {
        os << "rho,re,im,exact_re,exact_im\n" << std::setprecision(17);
        for (const auto& r : data)
            os << r["rho"].get<double>() << ',' << r["re"].get<double>() << ',' << r["im"].get<double>() << ','
               << r["exact_re"].get<double>() << ',' << r["exact_im"].get<double>() << '\n';
    };
    return rep;
}

Report cmd_convert(const Options& o) {
    const HalfInt n = HalfInt::parse(o.n), m = HalfInt::parse(o.m);
    const SigmaGrid grid = grid_for(o);
    const auto coef = basis_conversion(n, m, o.k, grid);
    const GroupFunction f = phi(n, m, o.k);
    double err = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double x = std::cosh(2.0 * (0.1 + 0.2 * i));
        err = std::max(err, std::abs(reconstruct_phi(coef, n, m, grid, x) - f.radial_at(x)));
    }
    json data = json::array();
    for (std::size_t j = 0; j < grid.size(); ++j)
        data.push_back({{"sigma", grid.nodes[j]}, {"re", coef[j].real()}, {"im", coef[j].imag()}});
    Report rep{{{"line parseval", line_parseval(n, m, o.k, grid) - 1.0, tol_or(o, 1e-3)},
                {"reconstruction at 10 points", err, tol_or(o, 1e-3)}},
               data,
               {}};
    rep.csv = [grid, coef](std::ostream& os) {
        os << "sigma,re,im\n" << std::setprecision(17);
        for (std::size_t j = 0; j < grid.size(); ++j)
            os << grid.nodes[j] << ',' << coef[j].real() << ',' << coef[j].imag() << '\n';
    };
    return rep;
}

Report cmd_bracket(const Options& o) {
    const KMContext ctx = KMContext::make(LieAlgebraSpec::sl2_ladder(), {o.k_L, o.k_R}, 12);
    const KMElement x = parse_element(o.x_terms, ctx.algebra), y = parse_element(o.y_terms, ctx.algebra);
    const KMElement xy = km_bracket(x, y, ctx, Basis::losert);
    const KMElement yx = km_bracket(y, x, ctx, Basis::losert);
    Report rep{{{"antisymmetry", (xy + yx).norm(), tol_or(o, 1e-12)},
                {"product truncation residual", xy.truncation, tol_or(o, 1e-6)},
                {"central L equals omega_L", std::abs(xy.c_L - cocycle_omega(Side::L, x, y, ctx)), 0.0},
                {"central R equals omega_R", std::abs(xy.c_R - cocycle_omega(Side::R, x, y, ctx)), 0.0}},
               to_json(xy, ctx.algebra),
               {}};
    const json data = rep.data;
    rep.csv = [data](std::ostream& os) {
        os << "generator,n,m,k,re,im\n" << std::setprecision(17);
        for (const auto& t : data["terms"])
            os << t["generator"].get<std::string>() << ',' << t["n"].get<double>() << ',' << t["m"].get<double>()
               << ',' << t["k"].get<int>() << ',' << t["re"].get<double>() << ',' << t["im"].get<double>() << '\n';
        for (const char* key : {"c_L", "c_R", "l0", "r0"})
            os << key << ",,,," << data[key][0].get<double>() << ',' << data[key][1].get<double>() << '\n';
    };
    return rep;
}

Report cmd_cg(const Options& o) {
    const PlancherelMode a = parse_mode(o.cg_a), b = parse_mode(o.cg_b);
    const SigmaGrid grid = grid_for(o);
    const CGExpansion e = cg_project(a, b, grid);
    std::vector<double> xs;
    for (int i = 0; i < 10; ++i) xs.push_back(std::cosh(2.0 * (0.1 + 0.2 * i)));
    const double err = cg_reconstruction_error(a, b, grid, xs);
    json disc = json::array(), cont = json::array();
    for (const auto& d : e.discrete)
        disc.push_back({{"label", d.label.str()}, {"re", d.value.real()}, {"im", d.value.imag()}});
    for (std::size_t j = 0; j < e.continuous.size(); ++j)
        cont.push_back({{"sigma", grid.nodes[j]}, {"re", e.continuous[j].real()}, {"im", e.continuous[j].imag()}});
    json data;
    data["n"] = e.n.value();
    data["m"] = e.m.value();
    data["discrete"] = disc;
    data["continuous"] = cont;
    Report rep{{{"pointwise reconstruction at 10 points", err, tol_or(o, 1e-3)}}, data, {}};
    rep.csv = [data](std::ostream& os) {
        os << "kind,label,sigma,re,im\n" << std::setprecision(17);
        for (const auto& d : data["discrete"])
            os << "discrete," << d["label"].get<std::string>() << ",," << d["re"].get<double>() << ','
               << d["im"].get<double>() << '\n';
        for (const auto& c : data["continuous"])
            os << "continuous,," << c["sigma"].get<double>() << ',' << c["re"].get<double>() << ','
               << c["im"].get<double>() << '\n';
    };
    return rep;
}

void write_report(const Options& o, const Report& r) {
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) throw InvalidInput("cannot open --out '" + o.out + "'");
    }
    std::ostream& os = o.out.empty() ? std::cout : file;
    if (o.format == "csv") {
        if (r.csv) r.csv(os);
        else checks_csv(os, r.checks);
        return;
    }
    json j = checks_to_json(r.checks);
    if (!r.data.is_null()) j["data"] = r.data;
    os << j.dump(2) << '\n';
}

void add_common(CLI::App* app, Options& o) {
    app->add_option("--lambda-max", o.lambda_max, "largest discrete label (integer or n/2)");
    app->add_option("--sigma-max", o.sigma_max, "upper end of the sigma grid");
    app->add_option("--quad-order", o.quad_order, "Gauss-Legendre order per panel");
    app->add_option("--x-max", o.x_max, "radial cutoff in x = cosh 2rho");
    app->add_option("--k-max", o.k_max, "largest Losert index k");
    app->add_option("--n-range", o.n_range, "L0 weights lo:hi (use --n-range=-4:4 for negative bounds)");
    app->add_option("--m-range", o.m_range, "R0 weights lo:hi");
    app->add_option("--tol", o.tol, "override every check tolerance")->check(CLI::PositiveNumber);
    app->add_option("--kl", o.k_L, "left central charge");
    app->add_option("--kr", o.k_R, "right central charge");
    app->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", o.out, "report path (default stdout)");
    app->add_option("--seed", o.seed, "seed for randomized checks");
    app->add_option("--rep", o.rep, "representation, e.g. discrete:1:+ or continuous:0.5:1/2");
}

void add_element(CLI::App* app, Options& o, bool with_k) {
    app->add_option("--n", o.n, "L0 weight");
    app->add_option("--m", o.m, "R0 weight");
    if (with_k) app->add_option("--k", o.k, "Losert index");
}

void add_function(CLI::App* app, Options& o) {
    add_element(app, o, true);
    app->add_option("--function", o.function, "phi, psi or gaussian");
    app->add_option("--width", o.width, "gaussian width in rho");
}

void add_points(CLI::App* app, Options& o) {
    app->add_option("--rho-max", o.rho_max, "largest rho sampled");
    app->add_option("--points", o.points, "number of rho samples");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SL(2,R) harmonic analysis and Kac-Moody toolkit"};
    app.require_subcommand(1);
    Options o;
    std::function<Report(const Options&)> action;

    auto* tab = app.add_subcommand("tabulate", "tabulate matrix elements, basis functions or ladder actions");
    tab->require_subcommand(1);
    auto* tpsi = tab->add_subcommand("psi", "matrix elements Psi on a rho grid");
    add_common(tpsi, o);
    add_points(tpsi, o);
    tpsi->callback([&] { action = cmd_tabulate_psi; });
    auto* tphi = tab->add_subcommand("phi", "Losert functions on a rho grid");
    add_common(tphi, o);
    add_points(tphi, o);
    tphi->callback([&] { action = cmd_tabulate_phi; });
    auto* tlad = tab->add_subcommand("ladder", "ladder operator on a Losert function");
    add_common(tlad, o);
    add_element(tlad, o, true);
    tlad->add_option("--op", o.op, "L+, L-, R+, R-, L0, R0 or Q");
    tlad->callback([&] { action = cmd_tabulate_ladder; });

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    add_common(ver, o);
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    ver->add_option("suite", o.suite, "suite name")->required()->check(CLI::IsMember(suites));
    ver->callback([&] { action = cmd_verify; });

    auto* tr = app.add_subcommand("transform", "Plancherel transforms and basis conversion");
    tr->require_subcommand(1);
    auto* an = tr->add_subcommand("analyze", "Plancherel coefficients of a test function");
    add_common(an, o);
    add_function(an, o);
    an->callback([&] { action = cmd_analyze; });
    auto* sy = tr->add_subcommand("synthesize", "analyze then resynthesize a test function");
    add_common(sy, o);
    add_function(sy, o);
    add_points(sy, o);
    sy->callback([&] { action = cmd_synthesize; });
    auto* cv = tr->add_subcommand("convert", "sigma-coefficients of a Losert function");
    add_common(cv, o);
    add_element(cv, o, true);
    cv->callback([&] { action = cmd_convert; });

    auto* br = app.add_subcommand("bracket", "Kac-Moody bracket of two Losert-basis elements");
    add_common(br, o);
    br->add_option("--x", o.x_terms, "term NAME:n:m:k[:coef], repeatable")->required();
    br->add_option("--y", o.y_terms, "term NAME:n:m:k[:coef], repeatable")->required();
    br->callback([&] { action = cmd_bracket; });

    auto* cg = app.add_subcommand("cg", "Clebsch-Gordan expansion of a product of matrix elements");
    add_common(cg, o);
    cg->add_option("--a", o.cg_a, "first mode n/LABEL/m")->required();
    cg->add_option("--b", o.cg_b, "second mode n/LABEL/m")->required();
    cg->callback([&] { action = cmd_cg; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        make_config(o);
        const Report r = action(o);
        write_report(o, r);
        bool ok = true;
        for (const auto& c : r.checks)
            if (!c.pass()) {
                std::cerr << "FAIL " << c.name << ": value " << c.value << " exceeds tolerance " << c.tolerance
                          << '\n';
                ok = false;
            }
        return ok ? 0 : 1;
    } catch (const ResidualError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 1;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const NonNormalisable& e) {
        std::cerr << "not normalisable: " << e.what() << '\n';
        return 2;
    } catch (const PoleError& e) {
        std::cerr << "pole: " << e.what() << '\n';
        return 2;
    } catch (const Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

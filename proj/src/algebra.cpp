#include "sl2r/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "sl2r/error.hpp"

namespace sl2r {

LieAlgebraSpec::LieAlgebraSpec(std::vector<std::string> names, std::vector<cplx> f)
    : names_(std::move(names)), f_(std::move(f)) {
    const std::size_t d = names_.size();
    if (d == 0) throw InvalidInput("LieAlgebraSpec: empty basis");
    if (f_.size() != d * d * d) throw InvalidInput("LieAlgebraSpec: structure constants must have dim^3 entries");
}

LieAlgebraSpec LieAlgebraSpec::sl2_ladder() {
    const cplx i(0.0, 1.0);
    std::vector<cplx> f(27, 0.0);
    auto set = [&](int a, int b, int c, cplx v) {
        f[(a * 3 + b) * 3 + c] = v;
        f[(b * 3 + a) * 3 + c] = -v;
    };
    set(0, 1, 1, -i);       // [K0,K+] = K+
    set(0, 2, 2, i);        // [K0,K-] = -K-
    set(1, 2, 0, 2.0 * i);  // [K+,K-] = -2K0
    return LieAlgebraSpec({"K0", "K+", "K-"}, f);
}

LieAlgebraSpec LieAlgebraSpec::sl2_hermitian() {
    std::vector<cplx> f(27, 0.0);
    auto set = [&](int a, int b, int c, double v) {
        f[(a * 3 + b) * 3 + c] = v;
        f[(b * 3 + a) * 3 + c] = -v;
    };
    set(0, 1, 2, 1.0);   // [K0,K1] = i K2
    set(0, 2, 1, -1.0);  // [K0,K2] = -i K1
    set(1, 2, 0, -1.0);  // [K1,K2] = -i K0
    return LieAlgebraSpec({"K0", "K1", "K2"}, f);
}

LieAlgebraSpec LieAlgebraSpec::abelian(int dim) {
    if (dim <= 0) throw InvalidInput("abelian: dim must be positive");
    std::vector<std::string> names;
    for (int a = 0; a < dim; ++a) names.push_back("T" + std::to_string(a));
    return LieAlgebraSpec(names, std::vector<cplx>(std::size_t(dim) * dim * dim, 0.0));
}

int LieAlgebraSpec::index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw InvalidInput("unknown generator: " + name);
    return static_cast<int>(it - names_.begin());
}

LieAlgebraSpec LieAlgebraSpec::with_entry(int a, int b, int c, cplx value) const {
    const int d = dim();
    if (a < 0 || b < 0 || c < 0 || a >= d || b >= d || c >= d) throw InvalidInput("with_entry: index out of range");
    std::vector<cplx> f = f_;
    f[(a * d + b) * d + c] = value;
    return LieAlgebraSpec(names_, f);
}

Eigen::VectorXcd bracket(const LieAlgebraSpec& alg, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    const int d = alg.dim();
    if (x.size() != d || y.size() != d) throw InvalidInput("bracket: dimension mismatch");
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(d);
    for (int a = 0; a < d; ++a) {
        if (x[a] == 0.0) continue;
        for (int b = 0; b < d; ++b) {
            if (y[b] == 0.0) continue;
            for (int c = 0; c < d; ++c) z[c] += x[a] * y[b] * alg.f(a, b, c);
        }
    }
    return cplx(0.0, 1.0) * z;
}

Eigen::MatrixXcd adjoint(const LieAlgebraSpec& alg, int a) {
    const int d = alg.dim();
    Eigen::MatrixXcd m(d, d);
    for (int c = 0; c < d; ++c)
        for (int b = 0; b < d; ++b) m(c, b) = cplx(0.0, 1.0) * alg.f(a, b, c);
    return m;
}

Eigen::MatrixXcd killing_form(const LieAlgebraSpec& alg) {
    const int d = alg.dim();
    std::vector<Eigen::MatrixXcd> ad;
    for (int a = 0; a < d; ++a) ad.push_back(adjoint(alg, a));
    Eigen::MatrixXcd g(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) g(a, b) = (ad[a] * ad[b]).trace();
    return g;
}

cplx killing_pairing(const Eigen::MatrixXcd& g, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    return (x.transpose() * g * y)(0, 0);
}

double check_jacobi(const LieAlgebraSpec& alg) {
    const int n = alg.dim();
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) {
                    cplx s = 0.0;
                    for (int d = 0; d < n; ++d)
                        s += alg.f(a, b, d) * alg.f(d, c, e) + alg.f(b, c, d) * alg.f(d, a, e) +
                             alg.f(c, a, d) * alg.f(d, b, e);
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

double check_antisymmetry(const LieAlgebraSpec& alg) {
    const int n = alg.dim();
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) worst = std::max(worst, std::abs(alg.f(a, b, c) + alg.f(b, a, c)));
    return worst;
}

Signature killing_signature(const Eigen::MatrixXcd& g, double tol) {
    if ((g - g.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, g.cwiseAbs().maxCoeff()))
        throw InvalidInput("killing_signature: matrix is not Hermitian in this basis");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    Signature s;
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double v = es.eigenvalues()[i];
        if (v > tol * scale) ++s.positive;
        else if (v < -tol * scale) ++s.negative;
        else ++s.zero;
    }
    return s;
}

nlohmann::json to_json(const LieAlgebraSpec& alg) {
    const int d = alg.dim();
    nlohmann::json f = nlohmann::json::array();
    for (int a = 0; a < d; ++a) {
        nlohmann::json fa = nlohmann::json::array();
        for (int b = 0; b < d; ++b) {
            nlohmann::json fb = nlohmann::json::array();
            for (int c = 0; c < d; ++c) fb.push_back({alg.f(a, b, c).real(), alg.f(a, b, c).imag()});
            fa.push_back(fb);
        }
        f.push_back(fa);
    }
    return {{"dim", d}, {"names", alg.names()}, {"f", f}};
}

LieAlgebraSpec lie_algebra_from_json(const nlohmann::json& j) {
    try {
        const int d = j.at("dim").get<int>();
        const auto names = j.at("names").get<std::vector<std::string>>();
        if (d <= 0 || static_cast<int>(names.size()) != d) throw InvalidInput("LieAlgebraSpec json: dim/names mismatch");
        std::vector<cplx> f(std::size_t(d) * d * d);
        const auto& jf = j.at("f");
        if (static_cast<int>(jf.size()) != d) throw InvalidInput("LieAlgebraSpec json: bad f shape");
        for (int a = 0; a < d; ++a) {
            if (static_cast<int>(jf[a].size()) != d) throw InvalidInput("LieAlgebraSpec json: bad f shape");
            for (int b = 0; b < d; ++b) {
                if (static_cast<int>(jf[a][b].size()) != d) throw InvalidInput("LieAlgebraSpec json: bad f shape");
                for (int c = 0; c < d; ++c) {
                    const auto& v = jf[a][b][c];
                    f[(a * d + b) * d + c] = cplx(v.at(0).get<double>(), v.at(1).get<double>());
                }
            }
        }
        return LieAlgebraSpec(names, f);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("LieAlgebraSpec json: ") + e.what());
    }
}

}  // namespace sl2r

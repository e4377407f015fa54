#include "sl2r/kernels.hpp"

#include <omp.h>

#include "sl2r/error.hpp"

namespace sl2r {

namespace {

std::vector<ProfilePtr> profiles_of(const std::vector<GroupFunction>& fs) {
    std::vector<ProfilePtr> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(f.radial_ptr());
    return out;
}

std::vector<double> decays_of(const std::vector<GroupFunction>& fs) {
    std::vector<double> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(f.decay());
    return out;
}

cplx gram_entry(const SampledSet& a, const SampledSet& b, const QuadratureRule& rule, Eigen::Index i,
                Eigen::Index j) {
    const auto& w = rule.weights();
    cplx s = 0.0;
    for (Eigen::Index q = 0; q < a.values.rows(); ++q) s += w[q] * std::conj(a.values(q, i)) * b.values(q, j);
    if (rule.half_line()) {
        const double p = 0.5 * (a.decay[i] + b.decay[j]);
        if (p <= 1.0) throw NonNormalisable("radial_gram: pairing does not converge");
        s += std::conj(a.end[i]) * b.end[j] * (rule.upper() + 1.0) / (p - 1.0);
    }
    return 0.25 * s;
}

}  // namespace

int kernel_threads() { return omp_get_max_threads(); }

SampledSet sample_profiles(const std::vector<ProfilePtr>& profiles, const std::vector<double>& decay,
                           const QuadratureRule& rule, Exec exec) {
    if (decay.size() != profiles.size()) throw InvalidInput("sample_profiles: decay size mismatch");
    const Eigen::Index nq = static_cast<Eigen::Index>(rule.size());
    const Eigen::Index nf = static_cast<Eigen::Index>(profiles.size());
    SampledSet s{Eigen::MatrixXcd(nq, nf), Eigen::RowVectorXcd(nf), decay};
    const auto& x = rule.nodes();
    if (exec == Exec::serial) {
        for (Eigen::Index j = 0; j < nf; ++j) {
            for (Eigen::Index q = 0; q < nq; ++q) s.values(q, j) = (*profiles[j])(x[q]);
            s.end[j] = (*profiles[j])(rule.upper());
        }
        return s;
    }
    // Exceptions must not escape the parallel region.
    std::exception_ptr err;
#pragma omp parallel for collapse(2) schedule(dynamic, 16)
    for (Eigen::Index j = 0; j < nf; ++j)
        for (Eigen::Index q = 0; q <= nq; ++q) {
            try {
                if (q < nq) s.values(q, j) = (*profiles[j])(x[q]);
                else s.end[j] = (*profiles[j])(rule.upper());
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
    if (err) std::rethrow_exception(err);
    return s;
}

SampledSet sample_functions(const std::vector<GroupFunction>& fs, const QuadratureRule& rule, Exec exec) {
    return sample_profiles(profiles_of(fs), decays_of(fs), rule, exec);
}

Eigen::MatrixXcd radial_gram(const SampledSet& a, const SampledSet& b, const QuadratureRule& rule, Exec exec) {
    if (a.values.rows() != static_cast<Eigen::Index>(rule.size()) || b.values.rows() != a.values.rows())
        throw InvalidInput("radial_gram: sample sets do not match the rule");
    const Eigen::Index na = a.values.cols(), nb = b.values.cols();
    Eigen::MatrixXcd g(na, nb);
    if (exec == Exec::serial) {
        for (Eigen::Index j = 0; j < nb; ++j)
            for (Eigen::Index i = 0; i < na; ++i) g(i, j) = gram_entry(a, b, rule, i, j);
        return g;
    }
    std::exception_ptr err;
#pragma omp parallel for collapse(2) schedule(static)
    for (Eigen::Index j = 0; j < nb; ++j)
        for (Eigen::Index i = 0; i < na; ++i) {
            try {
                g(i, j) = gram_entry(a, b, rule, i, j);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
    if (err) std::rethrow_exception(err);
    return g;
}

Eigen::VectorXcd combine_columns(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& c, Exec exec) {
    if (a.cols() != c.size()) throw InvalidInput("combine_columns: size mismatch");
    Eigen::VectorXcd y(a.rows());
    auto row = [&](Eigen::Index q) {
        cplx s = 0.0;
        for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(q, j) * c[j];
        y[q] = s;
    };
    if (exec == Exec::serial) {
        for (Eigen::Index q = 0; q < a.rows(); ++q) row(q);
    } else {
#pragma omp parallel for schedule(static)
        for (Eigen::Index q = 0; q < a.rows(); ++q) row(q);
    }
    return y;
}

Eigen::MatrixXcd evaluate_profiles(const std::vector<ProfilePtr>& profiles, const std::vector<double>& xs,
                                   Exec exec) {
    const Eigen::Index nx = static_cast<Eigen::Index>(xs.size());
    const Eigen::Index nf = static_cast<Eigen::Index>(profiles.size());
    Eigen::MatrixXcd m(nx, nf);
    if (exec == Exec::serial) {
        for (Eigen::Index j = 0; j < nf; ++j)
            for (Eigen::Index i = 0; i < nx; ++i) m(i, j) = (*profiles[j])(xs[i]);
        return m;
    }
    std::exception_ptr err;
#pragma omp parallel for collapse(2) schedule(dynamic, 16)
    for (Eigen::Index j = 0; j < nf; ++j)
        for (Eigen::Index i = 0; i < nx; ++i) {
            try {
                m(i, j) = (*profiles[j])(xs[i]);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
    if (err) std::rethrow_exception(err);
    return m;
}

Eigen::MatrixXcd gram(const std::vector<GroupFunction>& fs, const std::vector<GroupFunction>& gs,
                      const QuadratureRule& rule, Exec exec) {
    const SampledSet a = sample_functions(fs, rule, exec);
    const SampledSet b = sample_functions(gs, rule, exec);
    Eigen::MatrixXcd g = radial_gram(a, b, rule, exec);
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j < gs.size(); ++j)
            if (fs[i].n() != gs[j].n() || fs[i].m() != gs[j].m()) g(i, j) = 0.0;
    return g;
}

}  // namespace sl2r

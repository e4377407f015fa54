#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sl2r/group.hpp"
#include "sl2r/specfun.hpp"

namespace sl2r {

/// Serial kernels are the reference; parallel ones (OpenMP) use the same
/// summation order per output entry and give bit-identical results.
enum class Exec { serial, parallel };

/// Radial profiles sampled at the nodes of a rule, plus their value at the
/// upper end (used by the half-line tail model).
struct SampledSet {
    Eigen::MatrixXcd values;  // nodes × functions
    Eigen::RowVectorXcd end;  // value at rule.upper()
    std::vector<double> decay;
};

SampledSet sample_profiles(const std::vector<ProfilePtr>& profiles, const std::vector<double>& decay,
                           const QuadratureRule& rule, Exec exec);
SampledSet sample_functions(const std::vector<GroupFunction>& fs, const QuadratureRule& rule, Exec exec);

/// G(i,j) = ¼ Σ_q w_q conj(A_qi) B_qj plus the tail term of each pair: the
/// radial part of the scalar product for functions of one common sector.
Eigen::MatrixXcd radial_gram(const SampledSet& a, const SampledSet& b, const QuadratureRule& rule, Exec exec);

/// y(q) = Σ_j A_qj c_j for every node/point q.
Eigen::VectorXcd combine_columns(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& c, Exec exec);

/// Profiles evaluated at arbitrary abscissae: M(i,j) = g_j(x_i).
Eigen::MatrixXcd evaluate_profiles(const std::vector<ProfilePtr>& profiles, const std::vector<double>& xs,
                                   Exec exec);

/// Gram matrix of group functions: zero across sectors, radial_gram within.
Eigen::MatrixXcd gram(const std::vector<GroupFunction>& fs, const std::vector<GroupFunction>& gs,
                      const QuadratureRule& rule, Exec exec);

int kernel_threads();

}  // namespace sl2r

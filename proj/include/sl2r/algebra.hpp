#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sl2r/specfun.hpp"

namespace sl2r {

/// Finite-dimensional Lie algebra with [T^a, T^b] = i f^{ab}_c T^c.
class LieAlgebraSpec {
public:
    LieAlgebraSpec(std::vector<std::string> names, std::vector<cplx> f);

    /// Ladder basis (K0, K+, K-): [K0,K±] = ±K±, [K+,K-] = -2K0.
    static LieAlgebraSpec sl2_ladder();
    /// Hermitian basis (K0, K1, K2) with K± = K1 ± i K2; real structure constants.
    static LieAlgebraSpec sl2_hermitian();
    static LieAlgebraSpec abelian(int dim);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    int index_of(const std::string& name) const;
    cplx f(int a, int b, int c) const { return f_[(a * dim() + b) * dim() + c]; }
    LieAlgebraSpec with_entry(int a, int b, int c, cplx value) const;

private:
    std::vector<std::string> names_;
    std::vector<cplx> f_;
};

Eigen::VectorXcd bracket(const LieAlgebraSpec& alg, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);
/// Matrix of ad(T^a) acting on coefficient vectors.
Eigen::MatrixXcd adjoint(const LieAlgebraSpec& alg, int a);
/// g^{ab} = Tr(ad T^a ad T^b).
Eigen::MatrixXcd killing_form(const LieAlgebraSpec& alg);
/// g(x, y) = Σ x_a g^{ab} y_b (bilinear).
cplx killing_pairing(const Eigen::MatrixXcd& g, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);
double check_jacobi(const LieAlgebraSpec& alg);
double check_antisymmetry(const LieAlgebraSpec& alg);

struct Signature {
    int positive = 0, negative = 0, zero = 0;
};
/// Inertia of a Hermitian Killing matrix; throws InvalidInput if not Hermitian.
Signature killing_signature(const Eigen::MatrixXcd& g, double tol = 1e-12);

nlohmann::json to_json(const LieAlgebraSpec& alg);
LieAlgebraSpec lie_algebra_from_json(const nlohmann::json& j);

}  // namespace sl2r

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sl2r/kernels.hpp"
#include "sl2r/losert.hpp"
#include "sl2r/matrix_elements.hpp"
#include "sl2r/reps.hpp"

namespace sl2r {

/// Gauss–Legendre panels on [0, Σ_max] for the σ-integral.
struct SigmaGrid {
    double sigma_max = 12.0;
    std::vector<double> nodes, weights;

    static SigmaGrid make(double sigma_max = 12.0, int panels = 8, int order = 24);
    std::size_t size() const { return nodes.size(); }
};

/// Plancherel density σ tanh(π(σ+iε)): σ tanh πσ for ε = 0, σ coth πσ for ε = 1/2.
double plancherel_weight(double sigma, HalfInt eps);

/// Half-line rule used for pairings with continuous-series elements, which
/// decay only like x^{-1/2}.
const QuadratureRule& transform_rule();

/// ψ_σ = 2Ψ_σ at the grid nodes for one sector, sampled on the rule. Cached.
std::shared_ptr<const SampledSet> continuous_samples(HalfInt n, HalfInt m, const SigmaGrid& grid,
                                                     const QuadratureRule& rule);

struct DiscreteCoefficient {
    RepLabel label;
    cplx value;
};

/// Coefficients of one sector (n, m): f^{nληm} = (Ψ, f) and f(σ_j) = (ψ_{σ_j}, f).
struct PlancherelCoefficients {
    HalfInt n, m;
    std::vector<DiscreteCoefficient> discrete;
    SigmaGrid grid;
    std::vector<cplx> continuous;

    HalfInt eps() const { return n.frac(); }
    /// Σ|f_d|² + ∫ σ tanh(π(σ+iε)) |f(σ)|² dσ.
    double parseval_sum() const;
    nlohmann::ordered_json to_json() const;
};

/// Discrete labels with λ <= λ_max supporting both weights.
std::vector<RepLabel> discrete_labels(HalfInt n, HalfInt m, HalfInt lambda_max);

PlancherelCoefficients analyze(const GroupFunction& f, HalfInt lambda_max, const SigmaGrid& grid,
                               const QuadratureRule& rule = transform_rule(), Exec exec = Exec::parallel);

cplx synthesize(const PlancherelCoefficients& c, const GroupPoint& p);
/// Radial part of the synthesis at each x.
Eigen::VectorXcd synthesize_radial(const PlancherelCoefficients& c, const std::vector<double>& xs,
                                   Exec exec = Exec::parallel);

struct RoundTrip {
    double relative_l2_error;
    double parseval_sum;
    double norm2;
};
/// analyze → synthesize, with the error measured on `check` (default: losert_rule()).
RoundTrip round_trip(const GroupFunction& f, HalfInt lambda_max, const SigmaGrid& grid);

/// f^{nmk}(σ_j) = (ψ_{σ_j}, Φ_{nmk}); DomainError if k < k_min.
std::vector<cplx> basis_conversion(HalfInt n, HalfInt m, int k, const SigmaGrid& grid,
                                   const QuadratureRule& rule = transform_rule());
/// The same coefficient at a single σ.
cplx conversion_coefficient(double sigma, HalfInt n, HalfInt m, int k,
                            const QuadratureRule& rule = transform_rule());
/// ∫ σ tanh(π(σ+iε)) |f^{nmk}(σ)|² dσ on the grid.
double line_parseval(HalfInt n, HalfInt m, int k, const SigmaGrid& grid);
/// Φ_{nmk}(x) rebuilt from ∫ σ tanh(π(σ+iε)) f^{nmk}(σ) ψ_σ(x) dσ.
cplx reconstruct_phi(const std::vector<cplx>& coef, HalfInt n, HalfInt m, const SigmaGrid& grid, double x);

/// Partial sums of Ψ_σ = Σ_{k>=k_min} ½ conj(f^{nmk}(σ)) Φ_{nmk}, k <= K, at the
/// abscissae xs. `filtered` damps the tail with exp(-36 (k/K)^8).
std::vector<cplx> inverse_expansion(double sigma, HalfInt n, HalfInt m, int K, const std::vector<double>& xs,
                                    bool filtered);

/// σ-packet g on [lo, hi] (sampled by a 64-point Gauss rule).
struct SigmaPacket {
    std::function<cplx(double)> g;
    double lo, hi;

    static SigmaPacket gaussian(double center, double width, cplx scale = 1.0);
};

struct SmearedNorm {
    cplx value;         // (F, F') with F = ∫ σ tanh(π(σ+iε)) g(σ) ψ_σ dσ
    cplx expected;      // ∫ σ tanh(π(σ+iε)) conj(g) g' dσ
    bool touches_zero;  // a packet reaches σ = 0, where the ε = 0 density vanishes
};

/// Smeared form of (ψ_σ, ψ_σ') = δ(σ-σ') / (σ tanh π(σ+iε)). Returns the pairing
/// of the two smeared elements and the value predicted by the δ-normalisation.
SmearedNorm smeared_inner(const SigmaPacket& a, const SigmaPacket& b, HalfInt n, HalfInt m);
SmearedNorm smeared_continuous_norm(const SigmaPacket& g, HalfInt n, HalfInt m);

}  // namespace sl2r

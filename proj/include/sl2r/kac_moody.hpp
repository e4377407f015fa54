#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sl2r/algebra.hpp"
#include "sl2r/losert.hpp"
#include "sl2r/plancherel.hpp"

namespace sl2r {

enum class Basis { losert, plancherel };

/// Mode Ψ_{n,Λ,m} of the Plancherel presentation. Continuous modes stand for
/// ψ_σ = 2Ψ_σ at a node of the context's σ-grid.
struct PlancherelMode {
    HalfInt n;
    RepLabel label;
    HalfInt m;
};

/// T^a ⊗ mode; the first mode index is the L0-grade, the second the R0-grade.
struct KMGenerator {
    int a = 0;
    std::variant<LosertIndex, PlancherelMode> mode;

    static KMGenerator losert(int a, HalfInt n, HalfInt m, int k) { return {a, LosertIndex{n, m, k}}; }
    static KMGenerator plancherel(int a, HalfInt n, const RepLabel& L, HalfInt m) {
        return {a, PlancherelMode{n, L, m}};
    }
    Basis basis() const { return mode.index() == 0 ? Basis::losert : Basis::plancherel; }
    HalfInt n() const;
    HalfInt m() const;
    const LosertIndex& losert_mode() const { return std::get<LosertIndex>(mode); }
    const PlancherelMode& plancherel_mode() const { return std::get<PlancherelMode>(mode); }
    std::string str() const;
};

struct GeneratorLess {
    bool operator()(const KMGenerator& x, const KMGenerator& y) const;
};

struct CentralCharges {
    double k_L = 1.0;
    double k_R = 1.0;
};

/// Finite combination Σ x_g T_g + c_L k_L-direction + c_R + ℓ0 L0 + r0 R0.
/// Continuous Plancherel entries store w_j σ_j tanh(π(σ_j+iε)) C(σ_j), the
/// quadrature weight of the σ-integral included.
struct KMElement {
    std::map<KMGenerator, cplx, GeneratorLess> terms;
    cplx c_L = 0.0, c_R = 0.0;
    cplx l0 = 0.0, r0 = 0.0;
    double truncation = 0.0;  // largest product-expansion residual met while building

    static KMElement generator(const KMGenerator& g, cplx coef = 1.0);
    void add(const KMGenerator& g, cplx coef);
    KMElement& operator+=(const KMElement& o);
    KMElement operator*(cplx s) const;
    friend KMElement operator+(KMElement a, const KMElement& b) { return a += b; }
    friend KMElement operator-(const KMElement& a, const KMElement& b) { return a + b * cplx(-1.0); }
    /// sqrt(Σ|x_g|² + |c_L|² + |c_R|² + |ℓ0|² + |r0|²).
    double norm() const;
    /// Basis of the generator terms; throws InvalidInput if they are mixed.
    std::optional<Basis> basis() const;
};

/// Everything a bracket needs: the finite algebra, its Killing form, the
/// charges, truncations and grids.
struct KMContext {
    LieAlgebraSpec algebra;
    Eigen::MatrixXcd killing;
    CentralCharges charges;
    int k_max = 12;                 // Losert truncation of product expansions
    double truncation_tol = 1e300;  // throw TruncationError above this residual
    SigmaGrid grid = SigmaGrid::make();

    static KMContext make(LieAlgebraSpec alg, CentralCharges charges, int k_max = 12);
    /// Index of σ in the grid; InvalidInput if σ is not a node.
    std::size_t sigma_index(double sigma) const;
};

/// Φ_i Φ_j = Σ_{k''<=k_max} C^{k''} Φ_{n+n',m+m',k''} with the L² residual of
/// the truncation. Cached. Throws TruncationError if residual > tol.
CoefficientTable<LosertIndex> mode_product_losert(const LosertIndex& i, const LosertIndex& j, int k_max,
                                                  double tol = 1e-6);

/// Product Ψ₁Ψ₂ = Σ_Λ C^Λ Ψ_Λ + ∫ σ tanh(π(σ+iε)) C(σ) ψ_σ dσ.
struct CGExpansion {
    HalfInt n, m;                  // grades of the product
    std::vector<DiscreteCoefficient> discrete;
    std::vector<cplx> continuous;  // C(σ_j) = (ψ_{σ_j}, Ψ₁Ψ₂)
};
/// Continuous inputs are ψ_σ = 2Ψ_σ. Two continuous inputs: Unsupported.
CGExpansion cg_project(const PlancherelMode& a, const PlancherelMode& b, const SigmaGrid& grid);
/// Discrete-target coefficient (Ψ_{n1+n2,Λ,m1+m2}, Ψ₁Ψ₂).
cplx cg_coefficient(const PlancherelMode& a, const PlancherelMode& b, const RepLabel& target);
/// Product function Ψ₁Ψ₂ (continuous inputs as ψ_σ).
GroupFunction mode_function_product(const PlancherelMode& a, const PlancherelMode& b);
/// max_x |Ψ₁Ψ₂(x) - expansion(x)| over the given abscissae.
double cg_reconstruction_error(const PlancherelMode& a, const PlancherelMode& b, const SigmaGrid& grid,
                               const std::vector<double>& xs);

/// Bilinear pairing ⟨f, f'⟩ = (conj f, f') of two modes (continuous modes at
/// grid nodes carry the 1/(w ν) of the discretised δ).
cplx mode_pairing(const KMGenerator& x, const KMGenerator& y, const KMContext& ctx);

enum class Side { L, R };

cplx cocycle_omega(Side which, const KMElement& x, const KMElement& y, const KMContext& ctx);
KMElement km_bracket(const KMElement& x, const KMElement& y, const KMContext& ctx, Basis basis);
/// |ω([X,Y],Z) + ω([Y,Z],X) + ω([Z,X],Y)|.
double verify_cocycle(Side which, const KMElement& x, const KMElement& y, const KMElement& z,
                      const KMContext& ctx, Basis basis);
/// Norm of [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y].
double jacobi_residual(const KMElement& x, const KMElement& y, const KMElement& z, const KMContext& ctx,
                       Basis basis);

HalfInt grading(Op op, const KMGenerator& g);

/// LB → PB: discrete-part Φ become ±Ψ, d⊥ elements their σ-samples.
KMElement losert_to_plancherel(const KMElement& x, const KMContext& ctx);
/// PB → LB over k <= k_max.
KMElement plancherel_to_losert(const KMElement& x, const KMContext& ctx);

/// Root assignment for a finite algebra: one root vector per basis element
/// (the zero vector for Cartan elements).
struct RootData {
    std::vector<std::vector<int>> roots;
    static RootData sl2_ladder();  // K0 -> 0, K+ -> +1, K- -> -1
    bool is_root(const std::vector<int>& r) const;
};
std::vector<KMGenerator> root_space(const LieAlgebraSpec& alg, const RootData& rd, const std::vector<int>& root,
                                    HalfInt n, HalfInt m, int k_max);
/// Largest coefficient of [g_(α,n,m), g_(β,p,q)] outside g_(α+β,n+p,m+q)
/// (all of it when α+β is neither a root nor zero).
double containment_violation(const KMContext& ctx, const RootData& rd, const std::vector<int>& alpha, HalfInt n,
                             HalfInt m, const std::vector<int>& beta, HalfInt p, HalfInt q, int k_max);

nlohmann::ordered_json to_json(const KMElement& x, const LieAlgebraSpec& alg);

void clear_structure_cache();

}  // namespace sl2r

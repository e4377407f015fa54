#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl2r/group.hpp"
#include "sl2r/reps.hpp"
#include "sl2r/specfun.hpp"

namespace sl2r {

/// Matrix element Ψ_{n,Λ,m}. Discrete elements have unit norm; continuous
/// elements satisfy Ψ(0,0,0) = δ_{nm}.
GroupFunction psi(const RepLabel& L, HalfInt n, HalfInt m);

/// Continuous element normalised against the Plancherel density: 2Ψ, so that
/// (ψ_σ, ψ_σ') = δ(σ-σ') / (σ tanh π(σ+iε)) under scalar_product.
GroupFunction psi_plancherel(double sigma, HalfInt n, HalfInt m);

/// (f,g) = (1/4π²)∫ conj(f) g; zero across sectors, otherwise ¼∫₁^∞ conj(g_f) g_g dx.
cplx scalar_product(const GroupFunction& f, const GroupFunction& g, const QuadratureRule& rule);

/// ¼∫₁^{x_max} |g(x)|² dx without a tail term (used for non-normalisable elements).
double truncated_norm(const GroupFunction& f, double x_max, int order = 24);

enum class Op { Lplus, Lminus, L0, Rplus, Rminus, R0, Casimir };
enum class DiffMode { analytic, finite_difference };

struct FdOptions {
    double h = 0.04;   // base step in ρ
    int levels = 3;    // Richardson levels h, h/2, h/4
};

std::string op_name(Op op);
Op parse_op(const std::string& s);
/// (ΔL0-grade, ΔR0-grade) produced by op.
std::pair<int, int> op_shift(Op op);

/// Left/right differential operator or Casimir applied to f. The result is a
/// lazily evaluated GroupFunction with shifted grades.
GroupFunction apply_operator(Op op, const GroupFunction& f, DiffMode mode, FdOptions fd = {});

/// ρ-jet of f's radial profile: analytic or by finite differences.
RadialJet radial_jet(const GroupFunction& f, double rho, DiffMode mode, FdOptions fd = {});

struct TabulationRow {
    RepLabel label;
    HalfInt n, m;
    GroupPoint point;
    cplx value;
};

std::vector<TabulationRow> tabulate_psi(const std::vector<RepLabel>& labels, const std::vector<HalfInt>& ns,
                                        const std::vector<HalfInt>& ms, const std::vector<GroupPoint>& points);
void write_csv(std::ostream& os, const std::vector<TabulationRow>& rows);
nlohmann::ordered_json to_json(const std::vector<TabulationRow>& rows);

}  // namespace sl2r

#pragma once

#include <compare>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sl2r/group.hpp"
#include "sl2r/halfint.hpp"
#include "sl2r/matrix_elements.hpp"
#include "sl2r/reps.hpp"

namespace sl2r {

struct LosertIndex {
    HalfInt n, m;
    int k = 0;
    friend auto operator<=>(const LosertIndex&, const LosertIndex&) = default;
    friend bool operator==(const LosertIndex&, const LosertIndex&) = default;
};

/// Sparse coefficient list in insertion order, with the L² residual of the
/// truncated expansion it came from.
template <class Key>
struct CoefficientTable {
    std::vector<std::pair<Key, cplx>> entries;
    double residual = 0.0;

    cplx at(const Key& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return v;
        return 0.0;
    }
    std::size_t nonzero(double tol) const {
        std::size_t c = 0;
        for (const auto& e : entries)
            if (std::abs(e.second) > tol) ++c;
        return c;
    }
};

enum class SectorCase { case1, case2, case3 };

struct SectorClass {
    SectorCase tag;
    int k_min;
};

/// Case 1: n, m > 1/2; case 2: n, m < -1/2; case 3 otherwise. k_min counts the
/// discrete labels λ > 1/2 with λ <= min(|n|,|m|) and λ ≡ n mod 1.
SectorClass classify(HalfInt n, HalfInt m);
std::string case_name(SectorCase c);

/// Radial function e_{nmk}(x) in the printed normalisation (∫₁^∞ e² dx = 1).
double e_radial(HalfInt n, HalfInt m, int k, double x);
/// The printed (x-1), (x+1) form with a finite-sum Jacobi polynomial; exact
/// but overflows for large k·log x. Used as an oracle.
double e_radial_printed(HalfInt n, HalfInt m, int k, double x);

/// Closed-form profile of c·e_{nmk}.
ProfilePtr e_profile(HalfInt n, HalfInt m, int k, double scale = 1.0);
/// |e_{nmk}(x)| <= C x^{-decay/2}.
double losert_decay(HalfInt n, HalfInt m, int k);

/// Φ_{nmk} with radial part ê = 2e, orthonormal under scalar_product.
GroupFunction phi(HalfInt n, HalfInt m, int k);
GroupFunction phi(const LosertIndex& i);

/// For k < k_min: the discrete label whose matrix element is proportional to Φ_{nmk}.
RepLabel discrete_partner(HalfInt n, HalfInt m, int k);

/// Default half-line rule for Losert-basis pairings.
const QuadratureRule& losert_rule();

Eigen::MatrixXd gram_matrix(HalfInt n, HalfInt m, int k_max, const QuadratureRule& rule);

/// Coefficients of op Φ_{nmk} over Φ_{n',m',k'}, found by projection onto a
/// window of k'. Throws IncompleteError if the expansion misses more than
/// `tol` in L² norm. Results are cached (thread-safe).
CoefficientTable<LosertIndex> ladder_on_phi(Op op, HalfInt n, HalfInt m, int k, double tol = 1e-6);
void clear_ladder_cache();
std::size_t ladder_cache_size();

nlohmann::ordered_json to_json(Op op, const LosertIndex& src, const CoefficientTable<LosertIndex>& table);

}  // namespace sl2r

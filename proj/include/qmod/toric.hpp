#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qmod/representation.hpp"

namespace qmod {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

inline constexpr int kMaxToricWeight = 1000000;

/// Weighted C*-action g(h_a)^{mu_a} f(a) g(t_a)^{-nu_a} and its character
/// matrix B: rows follow q.arrows(), columns q.vertices(), and
/// B[a][v] = mu_a [v = h_a] - nu_a [v = t_a].
struct WeightedToricAction {
  Quiver quiver;
  ArrowWeights mu;
  ArrowWeights nu;
  IntMatrix weights;
};

WeightedToricAction weight_matrix(const Quiver& q, const ArrowWeights& mu, const ArrowWeights& nu);

/// Recomputes B from (quiver, mu, nu) and compares exactly.
bool weight_matrix_consistent(const WeightedToricAction& w);

/// Lattice basis of {m in Z^{N_A} : B^T m = 0}; the monomials prod f_a^{m_a}
/// are the invariant Laurent monomials of the weighted action.
struct MonomialBasis {
  std::vector<IntVector> vectors;
  std::size_t rank = 0;            // rank of B
  std::size_t cell_dimension = 0;  // N_A - rank
  Integer transform_determinant;   // det of the unimodular row transform, +-1
  bool saturated = false;          // Smith invariants of the basis are all 1
};

MonomialBasis invariant_monomial_basis(const WeightedToricAction& w);

// --- exact integer lattice helpers -------------------------------------

struct RowEchelon {
  IntMatrix echelon;    // U * A
  IntMatrix transform;  // unimodular U
  std::size_t rank = 0;
  Integer transform_determinant;
};

/// Integer row reduction to echelon form, tracking the unimodular transform.
RowEchelon row_echelon(const IntMatrix& a);

/// Row Hermite normal form: positive pivots, entries above each pivot
/// reduced into [0, pivot). Zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& a);

/// Nonzero diagonal of the Smith normal form.
std::vector<Integer> smith_invariants(const IntMatrix& a);

IntVector transpose_times(const IntMatrix& b, const IntVector& m);

/// Numeric cross-check: random nonzero scalar markings and gauge values;
/// true iff the monomial m changes by a relative amount <= 1e-9 in every trial.
bool check_invariance(const WeightedToricAction& w, const IntVector& m, int trials, std::uint64_t seed);

}  // namespace qmod

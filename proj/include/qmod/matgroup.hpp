#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "qmod/quiver.hpp"

namespace qmod {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

inline constexpr double kTolMembership = 1e-9;
inline constexpr double kTolEq = 1e-8;

// Throws NumericError on NaN/Inf entries.
void require_finite(const CMatrix& m, const char* what);

CMatrix identity(int n);
double frobenius_distance(const CMatrix& a, const CMatrix& b);

/// Conjugate transpose.
CMatrix cartan_involution(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol = kTolEq);
bool is_unitary(const CMatrix& m, double tol = kTolEq);

// GL: |det| > tol, SL: |det - 1| <= tol, U: ||m m* - I||_F <= tol, SU: both.
bool in_group(const CMatrix& m, const GroupSpec& g, double tol = kTolMembership);

CMatrix complex_gaussian(int n, Rng& rng);
CMatrix random_element(const GroupSpec& g, Rng& rng);
CMatrix random_element(const GroupSpec& g, std::uint64_t seed);

/// General matrix exponential (Pade scaling and squaring).
CMatrix matrix_exp(const CMatrix& m);

// Functions of Hermitian matrices, all through one eigendecomposition.
// hermitian_power / hermitian_log additionally need positive eigenvalues.
CMatrix hermitian_power(const CMatrix& h, double s);
CMatrix hermitian_exp(const CMatrix& h);
CMatrix hermitian_log(const CMatrix& h);

struct PolarFactors {
  CMatrix k;  // unitary
  CMatrix p;  // Hermitian, e^p = (g* g)^{1/2}
};

/// g = k e^p. Throws NumericError when g is singular.
PolarFactors polar_decompose(const CMatrix& g);

/// Integer power; negative exponents invert first.
CMatrix matrix_power(const CMatrix& m, int e);

CMatrix inverse(const CMatrix& m);

}  // namespace qmod

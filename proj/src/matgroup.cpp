#include "qmod/matgroup.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qmod/errors.hpp"

namespace qmod {

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw NumericError(std::string(what) + ": non-finite matrix entry");
}

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

CMatrix cartan_involution(const CMatrix& m) { return m.adjoint(); }

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

bool is_unitary(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && (m * m.adjoint() - identity(static_cast<int>(m.rows()))).norm() <= tol;
}

bool in_group(const CMatrix& m, const GroupSpec& g, double tol) {
  if (tol <= 0) throw PreconditionError("in_group: tolerance must be positive");
  if (m.rows() != g.n || m.cols() != g.n) throw PreconditionError("in_group: size mismatch");
  if (!m.allFinite()) return false;
  const Complex det = m.determinant();
  switch (g.family) {
    case GroupFamily::GL:
    case GroupFamily::Torus:
      return std::abs(det) > tol;
    case GroupFamily::SL:
      return std::abs(det - 1.0) <= tol;
    case GroupFamily::U:
      return is_unitary(m, tol);
    case GroupFamily::SU:
      return is_unitary(m, tol) && std::abs(det - 1.0) <= tol;
  }
  return false;
}

CMatrix complex_gaussian(int n, Rng& rng) {
  // standard complex normal: E|z|^2 = 1
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  return z;
}

namespace {

CMatrix haar_unitary(int n, Rng& rng) {
  CMatrix z = complex_gaussian(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phases so that diag(R) is positive
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= mag > 0 ? d / mag : Complex(1.0);
  }
  return q;
}

}  // namespace

CMatrix random_element(const GroupSpec& g, Rng& rng) {
  const int n = g.n;
  switch (g.family) {
    case GroupFamily::GL:
    case GroupFamily::Torus:
      return matrix_exp(complex_gaussian(n, rng) / std::sqrt(static_cast<double>(n)));
    case GroupFamily::SL: {
      CMatrix z = complex_gaussian(n, rng) / std::sqrt(static_cast<double>(n));
      z -= (z.trace() / static_cast<double>(n)) * identity(n);
      return matrix_exp(z);
    }
    case GroupFamily::U:
      return haar_unitary(n, rng);
    case GroupFamily::SU: {
      CMatrix u = haar_unitary(n, rng);
      const Complex root = std::pow(u.determinant(), 1.0 / n);
      return u / root;
    }
  }
  return identity(n);
}

CMatrix random_element(const GroupSpec& g, std::uint64_t seed) {
  Rng rng(seed);
  return random_element(g, rng);
}

CMatrix matrix_exp(const CMatrix& m) {
  CMatrix out = m.exp();
  require_finite(out, "matrix_exp");
  return out;
}

namespace {

Eigen::SelfAdjointEigenSolver<CMatrix> hermitian_eigen(const CMatrix& h, const char* what) {
  require_finite(h, what);
  if (!is_hermitian(h, kTolEq)) throw NumericError(std::string(what) + ": matrix is not Hermitian");
  CMatrix sym = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  if (es.info() != Eigen::Success) throw NumericError(std::string(what) + ": eigensolver failed");
  return es;
}

template <class F>
CMatrix apply_spectral(const Eigen::SelfAdjointEigenSolver<CMatrix>& es, F f) {
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd d = es.eigenvalues().unaryExpr([&](double x) { return Complex(f(x)); });
  return v * d.asDiagonal() * v.adjoint();
}

void require_positive(const Eigen::SelfAdjointEigenSolver<CMatrix>& es, const char* what) {
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw NumericError(std::string(what) + ": matrix is not positive definite");
}

}  // namespace

CMatrix hermitian_power(const CMatrix& h, double s) {
  auto es = hermitian_eigen(h, "hermitian_power");
  require_positive(es, "hermitian_power");
  if (s == 0.0) return identity(static_cast<int>(h.rows()));
  return apply_spectral(es, [s](double x) { return std::pow(x, s); });
}

CMatrix hermitian_exp(const CMatrix& h) {
  auto es = hermitian_eigen(h, "hermitian_exp");
  return apply_spectral(es, [](double x) { return std::exp(x); });
}

CMatrix hermitian_log(const CMatrix& h) {
  auto es = hermitian_eigen(h, "hermitian_log");
  require_positive(es, "hermitian_log");
  return apply_spectral(es, [](double x) { return std::log(x); });
}

PolarFactors polar_decompose(const CMatrix& g) {
  require_finite(g, "polar_decompose");
  if (g.rows() != g.cols()) throw PreconditionError("polar_decompose: matrix is not square");
  if (std::abs(g.determinant()) <= kTolMembership) throw NumericError("polar_decompose: singular input");
  CMatrix gram = g.adjoint() * g;
  auto es = hermitian_eigen(gram, "polar_decompose");
  require_positive(es, "polar_decompose");
  CMatrix inv_sqrt = apply_spectral(es, [](double x) { return 1.0 / std::sqrt(x); });
  CMatrix p = apply_spectral(es, [](double x) { return 0.5 * std::log(x); });
  return {g * inv_sqrt, p};
}

CMatrix inverse(const CMatrix& m) {
  if (std::abs(m.determinant()) == 0.0) throw NumericError("inverse: singular matrix");
  CMatrix out = m.partialPivLu().inverse();
  require_finite(out, "inverse");
  return out;
}

CMatrix matrix_power(const CMatrix& m, int e) {
  CMatrix base = e < 0 ? inverse(m) : m;
  unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
  CMatrix result = identity(static_cast<int>(m.rows()));
  while (k) {
    if (k & 1u) result = result * base;
    base = base * base;
    k >>= 1u;
  }
  return result;
}

}  // namespace qmod

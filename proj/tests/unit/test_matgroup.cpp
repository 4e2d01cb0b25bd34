#include <cmath>

#include <gtest/gtest.h>

#include "qmod/errors.hpp"
#include "qmod/matgroup.hpp"

using namespace qmod;

namespace {

const Complex I1(0.0, 1.0);

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CMatrix diag2(double a, double b) { return mat2(a, 0.0, 0.0, b); }

CMatrix random_pd(Rng& rng, int n) {
  CMatrix z = complex_gaussian(n, rng);
  return z.adjoint() * z + 0.1 * identity(n);
}

}  // namespace

TEST(MatGroup, CartanInvolution) {
  EXPECT_EQ(cartan_involution(mat2(0.0, I1, 0.0, 0.0)), mat2(0.0, 0.0, -I1, 0.0));
  CMatrix h = mat2(2.0, 1.0 + I1, 1.0 - I1, 3.0);
  EXPECT_EQ(cartan_involution(h), h);
  Rng rng(1);
  CMatrix a = complex_gaussian(3, rng), b = complex_gaussian(3, rng);
  EXPECT_LT(frobenius_distance(cartan_involution(a * b), cartan_involution(b) * cartan_involution(a)), 1e-14);
}

TEST(MatGroup, InGroup) {
  for (auto f : {GroupFamily::GL, GroupFamily::SL, GroupFamily::U, GroupFamily::SU})
    EXPECT_TRUE(in_group(identity(2), GroupSpec::make(f, 2)));
  EXPECT_FALSE(in_group(diag2(2, 1), GroupSpec::make(GroupFamily::SL, 2)));
  const double th = 0.7;
  CMatrix r = mat2(std::exp(I1 * th), 0.0, 0.0, std::exp(-I1 * th));
  EXPECT_TRUE(in_group(r, GroupSpec::make(GroupFamily::SU, 2)));
  EXPECT_FALSE(in_group(diag2(1, 0), GroupSpec::make(GroupFamily::GL, 2)));
  EXPECT_THROW(in_group(identity(3), GroupSpec::make(GroupFamily::GL, 2)), PreconditionError);
}

TEST(MatGroup, RandomElements) {
  const auto u2 = GroupSpec::make(GroupFamily::U, 2);
  EXPECT_TRUE(in_group(random_element(u2, 5), u2, 1e-10));
  const auto sl3 = GroupSpec::make(GroupFamily::SL, 3);
  EXPECT_LE(std::abs(random_element(sl3, 5).determinant() - 1.0), 1e-10);
  const auto su3 = GroupSpec::make(GroupFamily::SU, 3);
  EXPECT_TRUE(in_group(random_element(su3, 9), su3, 1e-10));
  const auto gl4 = GroupSpec::make(GroupFamily::GL, 4);
  CMatrix a = random_element(gl4, 42), b = random_element(gl4, 42);
  EXPECT_TRUE((a.array() == b.array()).all());
  EXPECT_FALSE((random_element(gl4, 43).array() == a.array()).all());
}

TEST(MatGroup, ClosureUnderProductsAndInverses) {
  Rng rng(2);
  for (auto f : {GroupFamily::GL, GroupFamily::SL, GroupFamily::U, GroupFamily::SU}) {
    const auto g = GroupSpec::make(f, 3);
    for (int i = 0; i < 50; ++i) {
      CMatrix a = random_element(g, rng), b = random_element(g, rng);
      EXPECT_TRUE(in_group(a * b, g, 10 * kTolMembership));
      EXPECT_TRUE(in_group(inverse(a), g, 10 * kTolMembership));
    }
  }
}

TEST(MatGroup, PolarDiag) {
  PolarFactors pf = polar_decompose(diag2(4, 1));
  EXPECT_LT(frobenius_distance(pf.k, identity(2)), 1e-14);
  EXPECT_LT(frobenius_distance(pf.p, diag2(std::log(4.0), 0.0)), 1e-14);
}

TEST(MatGroup, PolarOfUnitary) {
  CMatrix u = random_element(GroupSpec::make(GroupFamily::U, 3), 7);
  PolarFactors pf = polar_decompose(u);
  EXPECT_LT(frobenius_distance(pf.k, u), 1e-12);
  EXPECT_LT(pf.p.norm(), 1e-12);
}

TEST(MatGroup, PolarReconstructionAndUniqueness) {
  Rng rng(3);
  const auto gl3 = GroupSpec::make(GroupFamily::GL, 3);
  for (int i = 0; i < 100; ++i) {
    CMatrix g = random_element(gl3, rng);
    PolarFactors pf = polar_decompose(g);
    EXPECT_TRUE(is_unitary(pf.k));
    EXPECT_TRUE(is_hermitian(pf.p));
    CMatrix rebuilt = pf.k * hermitian_exp(pf.p);
    EXPECT_LT(frobenius_distance(rebuilt, g), 1e-10);
    PolarFactors again = polar_decompose(rebuilt);
    EXPECT_LT(frobenius_distance(again.k, pf.k), 1e-9);
    EXPECT_LT(frobenius_distance(again.p, pf.p), 1e-9);
  }
}

TEST(MatGroup, PolarSingular) { EXPECT_THROW(polar_decompose(diag2(1, 0)), NumericError); }

TEST(MatGroup, HermitianPower) {
  EXPECT_LT(frobenius_distance(hermitian_power(diag2(16, 1), -0.25), diag2(0.5, 1)), 1e-14);
  Rng rng(4);
  CMatrix h = random_pd(rng, 3);
  EXPECT_EQ(hermitian_power(h, 0.0), identity(3));
  CMatrix r = hermitian_power(h, 0.5);
  EXPECT_LT(frobenius_distance(r * r, h), 1e-10 * h.norm());
  EXPECT_THROW(hermitian_power(diag2(1, -1), 0.5), NumericError);
  EXPECT_THROW(hermitian_power(mat2(1.0, 1.0, 0.0, 1.0), 0.5), NumericError);
}

TEST(MatGroup, HermitianPowerLaw) {
  Rng rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    CMatrix h = random_pd(rng, 3);
    const double s = u(rng), t = u(rng);
    CMatrix lhs = hermitian_power(h, s) * hermitian_power(h, t);
    CMatrix rhs = hermitian_power(h, s + t);
    EXPECT_LT(frobenius_distance(lhs, rhs), 1e-9 * std::max(1.0, rhs.norm()));
  }
}

TEST(MatGroup, LogExpInverse) {
  Rng rng(6);
  CMatrix h = random_pd(rng, 4);
  EXPECT_LT(frobenius_distance(hermitian_exp(hermitian_log(h)), h), 1e-10 * h.norm());
}

// Oracle: for a diagonalizable matrix the exponential is V e^D V^{-1};
// a nilpotent block has the closed form I + N.
TEST(MatGroup, MatrixExp) {
  CMatrix n = mat2(0.0, 1.0, 0.0, 0.0);
  EXPECT_LT(frobenius_distance(matrix_exp(n), mat2(1.0, 1.0, 0.0, 1.0)), 1e-15);
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    CMatrix z = complex_gaussian(4, rng);
    Eigen::ComplexEigenSolver<CMatrix> es(z);
    CMatrix v = es.eigenvectors();
    CMatrix expected = v * es.eigenvalues().array().exp().matrix().asDiagonal() * v.inverse();
    EXPECT_LT(frobenius_distance(matrix_exp(z), expected), 1e-10 * expected.norm());
  }
}

TEST(MatGroup, MatrixPower) {
  CMatrix j = mat2(1.0, 1.0, 0.0, 1.0);
  EXPECT_EQ(matrix_power(j, 5), mat2(1.0, 5.0, 0.0, 1.0));
  EXPECT_LT(frobenius_distance(matrix_power(j, -3), mat2(1.0, -3.0, 0.0, 1.0)), 1e-14);
  EXPECT_EQ(matrix_power(j, 0), identity(2));
}

TEST(MatGroup, RejectsNonFinite) {
  CMatrix m = identity(2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(require_finite(m, "m"), NumericError);
  EXPECT_THROW(polar_decompose(m), NumericError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "obqr/inner_product.hpp"
#include "obqr/kernels.hpp"
#include "obqr/rng.hpp"
#include "oracles.hpp"

using namespace obqr;
using namespace obqr::kernels;

namespace {

constexpr double u = kUnitRoundoff;

}  // namespace

// --- DenseMatrix ---------------------------------------------------------

TEST(DenseMatrix, RejectsNonFiniteAndBadSizes) {
  EXPECT_THROW(DenseMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(DenseMatrix(1, 2, {1, NAN}), std::invalid_argument);
  EXPECT_THROW(DenseMatrix(1, 1, {INFINITY}), std::invalid_argument);
  EXPECT_THROW(DenseMatrix(0, 3), std::invalid_argument);
  EXPECT_TRUE(DenseMatrix().empty());
}

TEST(DenseMatrix, ColumnMajorLayout) {
  const auto a = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  const std::vector<double> expected = {1, 4, 2, 5, 3, 6};
  EXPECT_TRUE(std::equal(a.data().begin(), a.data().end(), expected.begin()));
  EXPECT_EQ(a(1, 2), 6.0);
}

TEST(DenseMatrix, ProductsMatchNaiveLoops) {
  const auto a = oracle::random_matrix(13, 7, 1);
  const auto b = oracle::random_matrix(7, 9, 2);
  EXPECT_LE(oracle::max_abs_diff(matmul(a, b), oracle::naive_matmul(a, b)), 1e-13);
  const auto c = oracle::random_matrix(13, 5, 3);
  EXPECT_LE(oracle::max_abs_diff(matmul_tn(a, c), oracle::naive_matmul(oracle::naive_transpose(a), c)), 1e-13);
  EXPECT_EQ(transpose(a), oracle::naive_transpose(a));
}

TEST(DenseMatrix, DotIsDeterministicAndAccurate) {
  std::vector<double> x(1001), y(1001);
  long double ref = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::sin(0.1 * i);
    y[i] = std::cos(0.37 * i);
    ref += static_cast<long double>(x[i]) * y[i];
  }
  EXPECT_NEAR(dot(x, y), static_cast<double>(ref), 1e-12);
  EXPECT_EQ(dot(x, y), dot(x, y));
}

TEST(DenseMatrix, Norm2AvoidsOverflow) {
  const std::vector<double> x = {3e200, 4e200};
  EXPECT_DOUBLE_EQ(norm2(x), 5e200);
}

// --- cholesky_upper ------------------------------------------------------

TEST(Cholesky, IdentityGivesIdentity) {
  EXPECT_EQ(cholesky_upper(DenseMatrix::identity(3)), DenseMatrix::identity(3));
}

TEST(Cholesky, HandExample) {
  const auto r = cholesky_upper(DenseMatrix::from_rows({{4, 2}, {2, 5}}));
  EXPECT_EQ(r, DenseMatrix::from_rows({{2, 1}, {0, 2}}));
  // R^T R reproduces the input exactly: 2*2=4, 2*1=2, 1*1+2*2=5.
  EXPECT_EQ(matmul_tn(r, r), DenseMatrix::from_rows({{4, 2}, {2, 5}}));
}

TEST(Cholesky, IndefiniteThrowsWithPivot) {
  try {
    cholesky_upper(DenseMatrix::from_rows({{1, 2}, {2, 1}}));
    FAIL() << "expected NotPositiveDefinite";
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.pivot(), 1u);
  }
}

TEST(Cholesky, ResidualWithinBoundOnRandomSpd) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const std::size_t n = 5 + 3 * seed;
    const auto s = oracle::random_spd(n, seed);
    const auto r = cholesky_upper(s);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_GT(r(j, j), 0.0);
      for (std::size_t i = j + 1; i < n; ++i) EXPECT_EQ(r(i, j), 0.0);
    }
    EXPECT_LE(oracle::max_abs_diff(oracle::naive_matmul(oracle::naive_transpose(r), r), s),
              64.0 * n * u * oracle::max_abs(s));
  }
}

TEST(Cholesky, TridiagonalMatchesDense) {
  const std::vector<double> d = {4, 5, 6, 7, 8};
  const std::vector<double> e = {-1, 2, -0.5, 1.5};
  const auto c = cholesky_tridiagonal(d, e);
  const auto r = cholesky_upper(InnerProduct::tridiagonal(d, e).to_dense());
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(c.diag[i], r(i, i), 1e-14);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) EXPECT_NEAR(c.super[i], r(i, i + 1), 1e-14);
  EXPECT_THROW(cholesky_tridiagonal(std::vector<double>{1, 1}, std::vector<double>{2}), NotPositiveDefinite);
}

// --- householder_qr ------------------------------------------------------

TEST(Householder, IdentityColumns) {
  const auto qr = householder_qr(DenseMatrix::identity(4, 2));
  EXPECT_EQ(qr.q, DenseMatrix::identity(4, 2));
  EXPECT_EQ(qr.r, DenseMatrix::identity(2));
}

TEST(Householder, PythagoreanColumn) {
  const auto qr = householder_qr(DenseMatrix::from_rows({{3}, {4}}));
  EXPECT_NEAR(qr.q(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(qr.q(1, 0), 0.8, 1e-15);
  EXPECT_NEAR(qr.r(0, 0), 5.0, 1e-15);
}

TEST(Householder, RandomGaussianResidualAndOrthogonality) {
  const auto w = oracle::random_matrix(20, 5, 7);
  const auto qr = householder_qr(w);
  const auto g = oracle::naive_matmul(oracle::naive_transpose(qr.q), qr.q);
  EXPECT_LE(oracle::power_two_norm(oracle::identity_minus(g)), 1e-14);
  EXPECT_LE(oracle::power_two_norm(w - oracle::naive_matmul(qr.q, qr.r)) / oracle::power_two_norm(w), 1e-14);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_GE(qr.r(j, j), 0.0);
}

TEST(Householder, OrthogonalityAtLargerSizes) {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{500, 50}, {2000, 20}, {300, 200}}) {
    const auto qr = householder_qr(oracle::random_matrix(m, n, static_cast<unsigned>(m + n)));
    EXPECT_LE(two_norm(oracle::identity_minus(matmul_tn(qr.q, qr.q))), 1e-13) << m << "x" << n;
  }
}

TEST(Householder, RankDeficientGivesZeroDiagonal) {
  auto w = oracle::random_matrix(6, 3, 11);
  for (std::size_t i = 0; i < 6; ++i) w(i, 2) = 2.0 * w(i, 0);
  const auto qr = householder_qr(w);
  EXPECT_LE(qr.r(2, 2), 1e-14 * qr.r(0, 0));
}

// --- sym_eig -------------------------------------------------------------

TEST(SymEig, Identity) {
  const auto e = sym_eig(DenseMatrix::identity(3));
  EXPECT_EQ(e.values, (std::vector<double>{1, 1, 1}));
}

TEST(SymEig, DiagonalGivesSignedPermutation) {
  const auto e = sym_eig(DenseMatrix::from_rows({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  EXPECT_EQ(e.values, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(std::abs(e.vectors(1, 0)), 1.0);
  EXPECT_EQ(std::abs(e.vectors(2, 1)), 1.0);
  EXPECT_EQ(std::abs(e.vectors(0, 2)), 1.0);
}

TEST(SymEig, TwoByTwoHandValues) {
  // [[2,1],[1,2]] has eigenvalues 1 and 3 with vectors (1,-1)/sqrt2, (1,1)/sqrt2.
  const auto e = sym_eig(DenseMatrix::from_rows({{2, 1}, {1, 2}}));
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 3.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(0, 1)), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(e.vectors(0, 0) * e.vectors(1, 0), -0.5, 1e-15);
}

TEST(SymEig, RandomSpdReconstruction) {
  const auto s = oracle::random_spd(30, 5);
  const auto e = sym_eig(s);
  EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
  DenseMatrix vd = e.vectors;
  for (std::size_t j = 0; j < 30; ++j)
    for (std::size_t i = 0; i < 30; ++i) vd(i, j) *= e.values[j];
  const auto rebuilt = oracle::naive_matmul(vd, oracle::naive_transpose(e.vectors));
  const double norm_s = oracle::power_two_norm(s);
  EXPECT_LE(oracle::power_two_norm(rebuilt - s), 1e-13 * norm_s);
  EXPECT_LE(oracle::power_two_norm(oracle::identity_minus(oracle::naive_matmul(oracle::naive_transpose(e.vectors), e.vectors))),
            1e-13);
}

TEST(SymEig, PositiveSpectrumForModeratelyConditionedSpd) {
  // V diag(d) V^T with d from 1e-13 to 1.
  const std::size_t m = 40;
  const auto v = haar_orthogonal(m, 17);
  std::vector<double> d = oracle::log_spaced(m, 1e13);
  for (double& x : d) x /= 1e13;
  DenseMatrix vd = v;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) vd(i, j) *= d[j];
  const auto e = sym_eig(matmul(vd, transpose(v)));
  for (double x : e.values) EXPECT_GT(x, 0.0);
}

TEST(SymEig, SweepCapReportsNoConvergence) {
  EXPECT_THROW(sym_eig(oracle::random_spd(6, 1), 0), NoConvergence);
}

// --- triangular solves ---------------------------------------------------

TEST(TriSolve, RightIdentity) {
  const auto b = oracle::random_matrix(4, 3, 2);
  EXPECT_EQ(tri_solve_right(b, DenseMatrix::identity(3)), b);
}

TEST(TriSolve, RightHandExample) {
  const auto x = tri_solve_right(DenseMatrix::from_rows({{2, 3}}), DenseMatrix::from_rows({{2, 1}, {0, 3}}));
  EXPECT_DOUBLE_EQ(x(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(x(0, 1), 2.0 / 3.0);
}

TEST(TriSolve, LeftLowerHandExample) {
  const auto x = tri_solve_left(DenseMatrix::from_rows({{2, 0}, {1, 3}}), Triangle::Lower,
                                DenseMatrix::from_rows({{2}, {7}}));
  EXPECT_DOUBLE_EQ(x(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(x(1, 0), 2.0);
}

TEST(TriSolve, LeftIdentity) {
  const auto b = oracle::random_matrix(3, 2, 4);
  EXPECT_EQ(tri_solve_left(DenseMatrix::identity(3), Triangle::Upper, b), b);
  EXPECT_EQ(tri_solve_left(DenseMatrix::identity(3), Triangle::Lower, b), b);
}

TEST(TriSolve, ZeroDiagonalThrows) {
  const auto r = DenseMatrix::from_rows({{1, 1}, {0, 0}});
  EXPECT_THROW(tri_solve_right(DenseMatrix::from_rows({{1, 1}}), r), SingularTriangular);
  EXPECT_THROW(tri_solve_left(r, Triangle::Upper, DenseMatrix::from_rows({{1}, {1}})), SingularTriangular);
  EXPECT_THROW(tri_inverse_upper(r), SingularTriangular);
}

TEST(TriSolve, RowwiseBackwardError) {
  auto r = oracle::random_matrix(8, 8, 9);
  for (std::size_t j = 0; j < 8; ++j) {
    for (std::size_t i = j + 1; i < 8; ++i) r(i, j) = 0.0;
    r(j, j) = std::abs(r(j, j)) + 0.1;
  }
  const auto b = oracle::random_matrix(20, 8, 10);
  const auto x = tri_solve_right(b, r);
  const auto residual = oracle::naive_matmul(x, r) - b;
  const auto scale = oracle::naive_matmul(abs(x), abs(r));
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 8; ++j) EXPECT_LE(std::abs(residual(i, j)), 8 * 8 * u * scale(i, j) + 1e-300);

  const auto inv = tri_inverse_upper(r);
  EXPECT_LE(oracle::max_abs_diff(oracle::naive_matmul(r, inv), DenseMatrix::identity(8)), 1e-12);
}

// --- norms ---------------------------------------------------------------

TEST(TwoNorm, SimpleValues) {
  EXPECT_EQ(two_norm(DenseMatrix(3, 2)), 0.0);
  EXPECT_NEAR(two_norm(DenseMatrix::identity(5)), 1.0, 1e-15);
  EXPECT_NEAR(two_norm(DenseMatrix::from_rows({{3, 0}, {0, 4}})), 4.0, 1e-15);
}

TEST(TwoNorm, AgreesWithPowerIteration) {
  for (unsigned seed = 0; seed < 5; ++seed) {
    const auto m = oracle::random_matrix(100, 20, 100 + seed);
    EXPECT_NEAR(two_norm(m), oracle::power_two_norm(m), 1e-8 * oracle::power_two_norm(m));
  }
}

TEST(SingularValues, RecoversPrescribedSpectrum) {
  // Rounding the oracle matrix perturbs sigma_min by about u * sigma_max, so
  // keep the spread moderate.
  const auto sigma = oracle::log_spaced(8, 1e6);
  const auto m = oracle::with_singular_values(30, sigma, 21);
  const auto s = singular_values(m);
  ASSERT_EQ(s.size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(s[k], sigma[7 - k], 1e-8 * sigma[7 - k]) << k;
}

TEST(SingularValues, GradedColumnsToHighRelativeAccuracy) {
  // Orthonormal columns scaled by 1 .. 1e-12: entrywise rounding is relative
  // per column, so each singular value is determined to a few ulps.
  const auto sigma = oracle::log_spaced(8, 1e12);
  DenseMatrix m = oracle::orthonormal_columns(30, 8, 22);
  for (std::size_t j = 0; j < 8; ++j)
    for (std::size_t i = 0; i < 30; ++i) m(i, j) /= sigma[j];
  const auto s = singular_values(m);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(s[k], 1.0 / sigma[k], 1e-12 / sigma[k]) << k;
}

// --- haar_orthogonal, rng ------------------------------------------------

TEST(Haar, OneByOneIsSign) {
  EXPECT_EQ(std::abs(haar_orthogonal(1, 3)(0, 0)), 1.0);
}

TEST(Haar, DeterministicAndOrthogonal) {
  const auto v = haar_orthogonal(80, 42);
  EXPECT_EQ(v, haar_orthogonal(80, 42));
  EXPECT_NE(v, haar_orthogonal(80, 43));
  EXPECT_LE(oracle::power_two_norm(oracle::identity_minus(oracle::naive_matmul(oracle::naive_transpose(v), v))), 1e-13);
  for (std::size_t j = 0; j < 80; ++j) EXPECT_NEAR(norm2(v.col(j)), 1.0, 1e-14);
}

TEST(Haar, FirstEntryHasZeroMean) {
  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) mean += haar_orthogonal(5, seed)(0, 0);
  EXPECT_LT(std::abs(mean / 1000.0), 0.05);
}

TEST(Rng, ReferenceValues) {
  // Published reference outputs of splitmix64 and of mt19937_64 (default seed).
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  Rng rng(5489);
  std::uint64_t x = 0;
  for (int k = 0; k < 10000; ++k) x = rng.next_u64();
  EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(Rng, UniformInOpenIntervalAndNormalMoments) {
  Rng rng(7);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double v = rng.uniform();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
  for (int k = 0; k < n; ++k) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n, 1.0, 0.01);
}

TEST(Rng, SubstreamsDiffer) {
  auto a = Rng::substream(1, 1), b = Rng::substream(1, 2), c = Rng::substream(1, 1);
  const auto x = a.next_u64();
  EXPECT_NE(x, b.next_u64());
  EXPECT_EQ(x, c.next_u64());
}

// --- InnerProduct --------------------------------------------------------

TEST(InnerProduct, TridiagonalStencilHandValue) {
  const auto a = InnerProduct::tridiagonal({2, 2, 2}, {-1, -1});
  const auto y = ip_apply(a, DenseMatrix::from_rows({{1}, {1}, {1}}));
  EXPECT_EQ(y, DenseMatrix::from_rows({{1}, {0}, {1}}));
}

TEST(InnerProduct, IdentityReturnsInput) {
  const auto x = oracle::random_matrix(5, 2, 1);
  EXPECT_EQ(ip_apply(InnerProduct::identity(5), x), x);
  EXPECT_EQ(ip_apply_flops(InnerProduct::identity(5), 2), 0u);
}

TEST(InnerProduct, DenseMatchesNaiveProductAndIsSymmetrized) {
  auto s = oracle::random_matrix(6, 6, 3);
  const auto a = InnerProduct::dense(s);
  EXPECT_EQ(a.matrix(), transpose(a.matrix()));
  const auto x = oracle::random_matrix(6, 3, 4);
  EXPECT_LE(oracle::max_abs_diff(ip_apply(a, x), oracle::naive_matmul(a.matrix(), x)), 1e-13);
  EXPECT_EQ(ip_apply_flops(a, 3), 2u * 6 * 6 * 3);
}

TEST(InnerProduct, EigendataValidated) {
  const auto s = DenseMatrix::from_rows({{2, 0}, {0, 3}});
  EXPECT_NO_THROW(InnerProduct::dense(s, Eigendata{DenseMatrix::identity(2), {2, 3}}));
  EXPECT_THROW(InnerProduct::dense(s, Eigendata{DenseMatrix::identity(2), {2, 4}}), std::invalid_argument);
  EXPECT_THROW(InnerProduct::dense(s, Eigendata{DenseMatrix::identity(2), {0, 3}}), std::invalid_argument);
}

TEST(InnerProduct, ANorm) {
  const auto a = InnerProduct::tridiagonal({2, 2}, {-1});
  const std::vector<double> x = {1, 2};  // x^T A x = 2 - 4 + 8 = 6
  EXPECT_NEAR(a_norm(a, x), std::sqrt(6.0), 1e-15);
}

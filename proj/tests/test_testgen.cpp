#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "obqr/kernels.hpp"
#include "obqr/testgen.hpp"
#include "oracles.hpp"

using namespace obqr;
using namespace obqr::testgen;

TEST(Eigenvalues, LogSpacedEndpoints) {
  const auto d = log_spaced_eigenvalues(80, 1e15);
  ASSERT_EQ(d.size(), 80u);
  EXPECT_EQ(d.front(), 1.0);
  EXPECT_EQ(d.back(), 1e15);
  EXPECT_TRUE(std::is_sorted(d.begin(), d.end()));
  const double step = std::log10(d[1]) - std::log10(d[0]);
  EXPECT_NEAR(step, 15.0 / 79.0, 1e-12);
  EXPECT_EQ(log_spaced_eigenvalues(1, 1e3), std::vector<double>{1.0});
  EXPECT_THROW(log_spaced_eigenvalues(5, 0.5), std::invalid_argument);
}

TEST(SingularValues, DescendingFromKappaToOne) {
  const auto s = log_spaced_singular_values(10, 1e6);
  EXPECT_NEAR(s.front(), 1e6, 1e-6);
  EXPECT_EQ(s.back(), 1.0);
  EXPECT_TRUE(std::is_sorted(s.rbegin(), s.rend()));
  EXPECT_EQ(log_spaced_singular_values(1, 7.0), std::vector<double>{7.0});
}

TEST(Selection, PerCase) {
  EXPECT_EQ(selected_eigen_indices(1, 80, 4), (std::vector<std::size_t>{3, 2, 1, 0}));
  EXPECT_EQ(selected_eigen_indices(2, 80, 4), (std::vector<std::size_t>{79, 78, 77, 76}));
  EXPECT_EQ(selected_eigen_indices(3, 80, 5), (std::vector<std::size_t>{79, 78, 2, 1, 0}));
  EXPECT_EQ(selected_eigen_indices(5, 80, 4), (std::vector<std::size_t>{79, 78, 1, 0}));
  EXPECT_THROW(selected_eigen_indices(4, 80, 4), InvalidCase);
  EXPECT_THROW(selected_eigen_indices(6, 80, 4), InvalidCase);
  EXPECT_THROW(selected_eigen_indices(0, 80, 4), InvalidCase);
}

TEST(Pairing, LargestSigmaOnLargestEigenvalue) {
  const std::vector<double> d = {1, 10, 100, 1000};
  const std::vector<double> sigma = {1, 5, 3};  // unsorted on purpose
  const std::vector<std::size_t> sel = {0, 3, 1};
  const auto p = pairing_policy(1, sigma, sel, d);
  EXPECT_EQ(p.u_cols, (std::vector<std::size_t>{3, 1, 0}));
  EXPECT_EQ(p.sigma, (std::vector<double>{5, 3, 1}));
}

TEST(BuildInstance, RejectsBadArguments) {
  EXPECT_THROW(build_instance(7, 10, 2, 10, 10, 1), InvalidCase);
  EXPECT_THROW(build_instance(1, 3, 4, 10, 10, 1), std::invalid_argument);
  EXPECT_THROW(build_instance(1, 10, 2, 0.5, 10, 1), std::invalid_argument);
}

class EveryCase : public ::testing::TestWithParam<int> {};

TEST_P(EveryCase, GroundTruthMatchesTheMatrices) {
  const int c = GetParam();
  const auto inst = build_instance(c, 60, 7, 1e8, 1e4, 20240101);
  EXPECT_EQ(inst.z.rows(), 60u);
  EXPECT_EQ(inst.z.cols(), 7u);
  EXPECT_EQ(inst.kappa_a, 1e8);
  ASSERT_TRUE(inst.a.eig());

  // Singular values of Z and of A^{1/2} Z against an independent computation.
  auto sz = kernels::singular_values(inst.z);
  auto truth = inst.truth.sigma_z;
  std::sort(truth.begin(), truth.end(), std::greater<>());
  for (std::size_t k = 0; k < 7; ++k) EXPECT_NEAR(sz[k], truth[k], 1e-9 * truth[k]) << k;
  EXPECT_NEAR(inst.kappa_z, truth.front() / truth.back(), 1e-12 * inst.kappa_z);

  const auto& e = *inst.a.eig();
  std::vector<double> sq(60);
  for (std::size_t i = 0; i < 60; ++i) sq[i] = std::sqrt(e.values[i]);
  const auto vt = oracle::naive_transpose(e.vectors);
  const auto a_half_z = oracle::naive_matmul(e.vectors, scale_rows(sq, oracle::naive_matmul(vt, inst.z)));
  const auto saz = kernels::singular_values(a_half_z);
  for (std::size_t k = 0; k < 7; ++k)
    EXPECT_NEAR(saz[k], inst.truth.sigma_a_half_z[k], 1e-8 * inst.truth.sigma_a_half_z[k]) << k;
  EXPECT_NEAR(inst.truth.kappa_a_half_z, saz.front() / saz.back(), 1e-7 * inst.truth.kappa_a_half_z);
}

TEST_P(EveryCase, DeterministicForSeed) {
  const int c = GetParam();
  const auto a = build_instance(c, 30, 4, 1e5, 1e2, 77);
  const auto b = build_instance(c, 30, 4, 1e5, 1e2, 77);
  const auto other = build_instance(c, 30, 4, 1e5, 1e2, 78);
  EXPECT_EQ(a.z, b.z);
  EXPECT_EQ(a.a.matrix(), b.a.matrix());
  EXPECT_NE(a.z, other.z);
}

INSTANTIATE_TEST_SUITE_P(Testgen, EveryCase, ::testing::Range(1, 6));

TEST(BuildInstance, SameVAcrossKappaForFixedSeed) {
  const auto a = build_instance(1, 30, 4, 1e3, 10, 5);
  const auto b = build_instance(1, 30, 4, 1e9, 10, 5);
  EXPECT_EQ(a.a.eig()->vectors, b.a.eig()->vectors);
}

TEST(BuildInstance, Case5IsAOrthonormal) {
  // A is formed in floating point, so Z^T A Z = I holds to about u kappa(A).
  const auto inst = build_instance(5, 80, 10, 1e10, 1, 3);
  const auto g = oracle::naive_matmul(oracle::naive_transpose(inst.z), oracle::naive_matmul(inst.a.matrix(), inst.z));
  EXPECT_LE(oracle::max_abs_diff(g, DenseMatrix::identity(10)), 80 * kUnitRoundoff * 1e10);
  EXPECT_NEAR(inst.kappa_z, std::sqrt(inst.a.eig()->values[79] / inst.a.eig()->values[0]), 1e-6 * inst.kappa_z);
  EXPECT_NEAR(inst.truth.kappa_a_half_z, 1.0, 1e-12);
}

TEST(BuildInstance, Case5IsAOrthonormalToRoundoffAtModerateKappa) {
  const auto inst = build_instance(5, 80, 10, 1e2, 1, 3);
  const auto g = oracle::naive_matmul(oracle::naive_transpose(inst.z), oracle::naive_matmul(inst.a.matrix(), inst.z));
  EXPECT_LE(oracle::power_two_norm(oracle::identity_minus(g)), 1e-12);
}

TEST(BuildInstance, SpectralFidelity) {
  // Rounding V D V^T to double perturbs every eigenvalue by about u ||A||, so
  // fidelity is normwise; relative to d_i it degrades like u kappa(A).
  for (double ka : {1e2, 1e6, 1e12}) {
    const auto inst = build_instance(1, 80, 10, ka, 10, 4);
    const auto measured = kernels::sym_eig(inst.a.matrix()).values;
    const auto& d = inst.a.eig()->values;
    for (std::size_t i = 0; i < 80; ++i) {
      EXPECT_LE(std::abs(measured[i] - d[i]), 1e-13 * d.back()) << ka << " " << i;
      if (ka <= 1e2) EXPECT_LE(std::abs(measured[i] - d[i]), 1e-12 * d[i]) << i;
    }
  }
}

TEST(BuildInstance, Case3HitsWorstCaseProducts) {
  // sigma_1(Z) sits on the largest eigenvector and the smallest eigenvector is
  // in range(Z), so kappa(A^{1/2}Z) = kappa(A)^{1/2} kappa(Z).
  const auto inst = build_instance(3, 80, 10, 1e6, 1e3, 3);
  EXPECT_NEAR(inst.truth.kappa_a_half_z, 1e3 * 1e3, 1e-6 * 1e6);
  const std::set<std::size_t> cols(inst.truth.u_cols.begin(), inst.truth.u_cols.end());
  EXPECT_TRUE(cols.count(0));
  EXPECT_TRUE(cols.count(79));
  EXPECT_EQ(inst.truth.u_cols.front(), 79u);
}

TEST(SweepPlan, DefaultGrid) {
  const auto plan = sweep_plan(10, 1e15, 15, SqrtOfKappaA{});
  ASSERT_EQ(plan.size(), 15u);
  for (int k = 0; k < 15; ++k) {
    EXPECT_NEAR(std::log10(plan[k].kappa_a), k + 1.0, 1e-12);
    EXPECT_NEAR(std::log10(plan[k].kappa_z), (k + 1.0) / 2.0, 1e-12);
  }
}

TEST(SweepPlan, FixedRuleAndErrors) {
  const auto plan = sweep_plan(1, 100, 3, FixedKappaZ{10});
  EXPECT_EQ(plan[1].kappa_z, 10.0);
  EXPECT_NEAR(plan[1].kappa_a, 10.0, 1e-12);
  EXPECT_THROW(sweep_plan(100, 10, 3, SqrtOfKappaA{}), InvalidRange);
  EXPECT_THROW(sweep_plan(0.5, 10, 3, SqrtOfKappaA{}), InvalidRange);
  EXPECT_THROW(sweep_plan(1, 10, 1, SqrtOfKappaA{}), InvalidRange);
  EXPECT_THROW(sweep_plan(1, 10, 3, FixedKappaZ{0.1}), InvalidRange);
}

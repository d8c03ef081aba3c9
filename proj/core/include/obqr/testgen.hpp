#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "obqr/dense_matrix.hpp"
#include "obqr/inner_product.hpp"

// Constructed test problems with known spectra.
//
// A = V diag(d) V^T with V Haar-random and log10(d) evenly spaced on
// [0, log10(kappa_a)]. Z = U diag(sigma) W^T with W Haar-random n x n and the
// left singular vectors U chosen per case:
//
//   case 1  eigenvectors of the n smallest eigenvalues of A
//   case 2  eigenvectors of the n largest eigenvalues
//   case 3  ceil(n/2) smallest and floor(n/2) largest
//   case 4  a random orthonormal m x n matrix, independent of V
//   case 5  the case-3 selection with sigma_k = d_k^{-1/2}, so Z^T A Z = I
//
// Cases 1-4 use singular values log-spaced from 1 up to kappa_z.
namespace obqr::testgen {

class InvalidCase : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroundTruth {
  std::vector<double> sigma_z;            ///< singular values of Z, in the order they pair with u_cols
  std::vector<std::size_t> u_cols;        ///< eigenvector indices used for U (empty for case 4)
  std::vector<double> sigma_a_half_z;     ///< singular values of A^{1/2} Z, descending
  double kappa_a_half_z = 0.0;
};

struct TestInstance {
  int case_id = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  double kappa_a = 1.0;  ///< d_max / d_min of the constructed spectrum
  double kappa_z = 1.0;  ///< for case 5 this is the realized ratio, not the request
  std::uint64_t seed = 0;
  InnerProduct a;        ///< dense, carrying its exact eigendata
  DenseMatrix z;
  GroundTruth truth;
};

/// RNG substream ids derived from the instance seed.
inline constexpr std::uint64_t kStreamV = 1;
inline constexpr std::uint64_t kStreamU = 2;
inline constexpr std::uint64_t kStreamW = 3;

/// Eigenvalues d_i = 10^{alpha (i-1)}, alpha = log10(kappa_a)/(m-1), ascending.
std::vector<double> log_spaced_eigenvalues(std::size_t m, double kappa_a);

/// Singular values 10^{log10(kappa_z) (n-k)/(n-1)}, k = 1..n: kappa_z down to 1.
std::vector<double> log_spaced_singular_values(std::size_t n, double kappa_z);

/// Indices (into the ascending spectrum) of the eigenvectors case `case_id`
/// uses, ordered by descending eigenvalue. Throws InvalidCase for case 4
/// (which has no eigenvector selection) and ids outside 1..5.
std::vector<std::size_t> selected_eigen_indices(int case_id, std::size_t m, std::size_t n);

struct Pairing {
  std::vector<std::size_t> u_cols;  ///< column k of U is eigenvector u_cols[k]
  std::vector<double> sigma;        ///< singular value paired with column k
};

/// Pairs descending singular values with descending selected eigenvalues, so
/// sigma_1(Z) always sits on the eigenvector of the largest selected eigenvalue.
Pairing pairing_policy(int case_id, std::span<const double> sigma_z,
                       std::span<const std::size_t> selected, std::span<const double> d);

TestInstance build_instance(int case_id, std::size_t m, std::size_t n, double kappa_a,
                            double kappa_z, std::uint64_t seed);

struct SqrtOfKappaA {};
struct FixedKappaZ {
  double value;
};
using KappaZRule = std::variant<SqrtOfKappaA, FixedKappaZ>;

struct SweepPoint {
  double kappa_a;
  double kappa_z;
};

/// `points` kappa_a values log-spaced over [kappa_min, kappa_max]; throws
/// InvalidRange unless 1 <= kappa_min <= kappa_max and points >= 2.
std::vector<SweepPoint> sweep_plan(double kappa_min, double kappa_max, int points, KappaZRule rule);

}  // namespace obqr::testgen

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "obqr/dense_matrix.hpp"
#include "obqr/inner_product.hpp"
#include "obqr/rng.hpp"

// Dense kernels the factorizations are assembled from. All functions are pure
// and single-threaded.
namespace obqr::kernels {

/// A Cholesky pivot was not positive.
class NotPositiveDefinite : public std::runtime_error {
 public:
  explicit NotPositiveDefinite(std::size_t pivot);
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// A triangular factor has an exactly zero diagonal entry.
class SingularTriangular : public std::runtime_error {
 public:
  explicit SingularTriangular(std::size_t index);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NoConvergence : public std::runtime_error {
 public:
  explicit NoConvergence(int sweeps);
  int sweeps() const noexcept { return sweeps_; }

 private:
  int sweeps_;
};

enum class Triangle { Lower, Upper };

/// Upper-triangular R with positive diagonal and R^T R = S. Reads only the
/// upper triangle of S.
DenseMatrix cholesky_upper(const DenseMatrix& s);

/// Cholesky factor of a symmetric tridiagonal matrix: A = C^T C with C upper
/// bidiagonal (`diag` on the diagonal, `super` on the first superdiagonal).
struct Bidiagonal {
  std::vector<double> diag;
  std::vector<double> super;
};
Bidiagonal cholesky_tridiagonal(std::span<const double> diag, std::span<const double> offdiag);

struct ThinQr {
  DenseMatrix q;  ///< m x n, orthonormal columns
  DenseMatrix r;  ///< n x n upper triangular, non-negative diagonal
};

/// Householder QR of an m x n matrix, m >= n, returning the thin factors.
/// Column signs are chosen so that diag(R) >= 0.
ThinQr householder_qr(const DenseMatrix& w);

struct SymEig {
  DenseMatrix vectors;          ///< orthogonal, column k pairs with values[k]
  std::vector<double> values;   ///< ascending
};

inline constexpr int kJacobiSweepCap = 30;

/// Cyclic Jacobi eigensolver for a symmetric matrix. Throws NoConvergence if
/// `max_sweeps` sweeps do not annihilate the off-diagonal part.
SymEig sym_eig(const DenseMatrix& s, int max_sweeps = kJacobiSweepCap);

/// X with X R = B, R upper triangular.
DenseMatrix tri_solve_right(const DenseMatrix& b, const DenseMatrix& r);

/// X with C X = B for triangular C.
DenseMatrix tri_solve_left(const DenseMatrix& c, Triangle uplo, const DenseMatrix& b);

/// Inverse of an upper-triangular matrix.
DenseMatrix tri_inverse_upper(const DenseMatrix& r);

/// Largest singular value, from the eigenvalues of the smaller Gram matrix.
double two_norm(const DenseMatrix& m);

/// All singular values, descending, by one-sided (Hestenes) Jacobi. Accurate
/// to high relative precision for the small singular values as well, which
/// two_norm's Gram-matrix route is not.
std::vector<double> singular_values(const DenseMatrix& m);

/// Haar-distributed m x m orthogonal matrix: Householder QR of an i.i.d.
/// standard-normal matrix with the non-negative R-diagonal convention.
DenseMatrix haar_orthogonal(std::size_t m, std::uint64_t seed);
DenseMatrix haar_orthogonal(std::size_t m, Rng& rng);

/// Matrix of i.i.d. standard normal entries, filled column by column.
DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace obqr::kernels

#include <string>

#include "obqr/kernels.hpp"

namespace obqr::kernels {

SingularTriangular::SingularTriangular(std::size_t index)
    : std::runtime_error("triangular solve: zero diagonal at index " + std::to_string(index)),
      index_(index) {}

DenseMatrix tri_solve_right(const DenseMatrix& b, const DenseMatrix& r) {
  const std::size_t n = r.rows();
  if (r.cols() != n || b.cols() != n) throw std::invalid_argument("tri_solve_right: dimension mismatch");
  for (std::size_t j = 0; j < n; ++j)
    if (r(j, j) == 0.0) throw SingularTriangular(j);

  // Column j of X depends only on columns 0..j-1, so each row sees the same
  // sequence of operations as a row-by-row substitution.
  DenseMatrix x = b;
  for (std::size_t j = 0; j < n; ++j) {
    auto xj = x.col(j);
    for (std::size_t k = 0; k < j; ++k) {
      const double rkj = r(k, j);
      if (rkj != 0.0) axpy(-rkj, x.col(k), xj);
    }
    const double inv = 1.0 / r(j, j);
    for (double& v : xj) v *= inv;
  }
  return x;
}

DenseMatrix tri_solve_left(const DenseMatrix& c, Triangle uplo, const DenseMatrix& b) {
  const std::size_t n = c.rows();
  if (c.cols() != n || b.rows() != n) throw std::invalid_argument("tri_solve_left: dimension mismatch");
  for (std::size_t j = 0; j < n; ++j)
    if (c(j, j) == 0.0) throw SingularTriangular(j);

  DenseMatrix x = b;
  for (std::size_t col = 0; col < x.cols(); ++col) {
    auto xc = x.col(col);
    if (uplo == Triangle::Upper) {
      for (std::size_t j = n; j-- > 0;) {
        xc[j] /= c(j, j);
        const double xj = xc[j];
        if (xj != 0.0) axpy(-xj, c.col(j).first(j), xc.first(j));
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        xc[j] /= c(j, j);
        const double xj = xc[j];
        if (xj != 0.0) axpy(-xj, c.col(j).subspan(j + 1), xc.subspan(j + 1));
      }
    }
  }
  return x;
}

DenseMatrix tri_inverse_upper(const DenseMatrix& r) {
  return tri_solve_left(r, Triangle::Upper, DenseMatrix::identity(r.rows()));
}

}  // namespace obqr::kernels

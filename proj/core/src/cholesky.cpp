#include <cmath>
#include <string>

#include "obqr/kernels.hpp"

namespace obqr::kernels {

NotPositiveDefinite::NotPositiveDefinite(std::size_t pivot)
    : std::runtime_error("Cholesky: non-positive pivot at index " + std::to_string(pivot)),
      pivot_(pivot) {}

DenseMatrix cholesky_upper(const DenseMatrix& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("cholesky_upper: matrix must be square");
  const std::size_t n = s.rows();
  DenseMatrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto rj = r.col(j);
    // Column j of R above the diagonal, by forward substitution against
    // the already computed leading block.
    for (std::size_t i = 0; i < j; ++i) {
      const auto ri = r.col(i);
      const double v = s(i, j) - dot(ri.first(i), rj.first(i));
      rj[i] = v / ri[i];
    }
    const double pivot = s(j, j) - dot(rj.first(j), rj.first(j));
    if (!(pivot > 0.0)) throw NotPositiveDefinite(j);
    rj[j] = std::sqrt(pivot);
  }
  return r;
}

Bidiagonal cholesky_tridiagonal(std::span<const double> diag, std::span<const double> offdiag) {
  const std::size_t m = diag.size();
  if (m == 0 || offdiag.size() + 1 != m)
    throw std::invalid_argument("cholesky_tridiagonal: bad band lengths");
  Bidiagonal c;
  c.diag.resize(m);
  c.super.resize(m - 1);
  double carry = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double pivot = diag[i] - carry;
    if (!(pivot > 0.0)) throw NotPositiveDefinite(i);
    c.diag[i] = std::sqrt(pivot);
    if (i + 1 < m) {
      c.super[i] = offdiag[i] / c.diag[i];
      carry = c.super[i] * c.super[i];
    }
  }
  return c;
}

}  // namespace obqr::kernels

#include <cmath>
#include <string>

#include "finalize.hpp"
#include "obqr/kernels.hpp"
#include "obqr/oblique.hpp"

namespace obqr {

namespace {

void require_tall(const InnerProduct& a, const DenseMatrix& z, const char* who) {
  if (z.rows() != a.size()) throw std::invalid_argument(std::string(who) + ": Z rows must match A");
  if (z.rows() < z.cols()) throw std::invalid_argument(std::string(who) + ": requires m >= n");
}

DenseMatrix bidiagonal_times(const kernels::Bidiagonal& c, const DenseMatrix& z) {
  const std::size_t m = z.rows();
  DenseMatrix w(m, z.cols());
  for (std::size_t j = 0; j < z.cols(); ++j) {
    const auto zj = z.col(j);
    auto wj = w.col(j);
    for (std::size_t i = 0; i + 1 < m; ++i) wj[i] = c.diag[i] * zj[i] + c.super[i] * zj[i + 1];
    wj[m - 1] = c.diag[m - 1] * zj[m - 1];
  }
  return w;
}

DenseMatrix bidiagonal_solve(const kernels::Bidiagonal& c, const DenseMatrix& y) {
  const std::size_t m = y.rows();
  DenseMatrix x = y;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    auto xj = x.col(j);
    xj[m - 1] /= c.diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) xj[i] = (xj[i] - c.super[i] * xj[i + 1]) / c.diag[i];
  }
  return x;
}

}  // namespace

FactorizationOutcome chol_eqr(const InnerProduct& a, const DenseMatrix& z) {
  require_tall(a, z, "chol_eqr");
  try {
    switch (a.kind()) {
      case InnerProduct::Kind::Identity: {
        kernels::ThinQr yr = kernels::householder_qr(z);
        return detail::finalize(QrFactors{std::move(yr.q), std::move(yr.r), {}});
      }
      case InnerProduct::Kind::Tridiagonal: {
        const kernels::Bidiagonal c = kernels::cholesky_tridiagonal(a.diagonal(), a.off_diagonal());
        kernels::ThinQr yr = kernels::householder_qr(bidiagonal_times(c, z));
        DenseMatrix q = bidiagonal_solve(c, yr.q);
        return detail::finalize(QrFactors{std::move(q), std::move(yr.r), {}});
      }
      case InnerProduct::Kind::Dense: {
        const DenseMatrix c = kernels::cholesky_upper(a.matrix());
        kernels::ThinQr yr = kernels::householder_qr(matmul(c, z));
        // Solve against Y, the orthonormal factor of CZ.
        DenseMatrix q = kernels::tri_solve_left(c, kernels::Triangle::Upper, yr.q);
        return detail::finalize(QrFactors{std::move(q), std::move(yr.r), {}});
      }
    }
  } catch (const kernels::NotPositiveDefinite& e) {
    return Breakdown{BreakdownStage::CholeskyOfA, e.what()};
  }
  throw std::invalid_argument("chol_eqr: unknown inner product kind");
}

FactorizationOutcome syev_eqr(const InnerProduct& a, const DenseMatrix& z) {
  require_tall(a, z, "syev_eqr");
  kernels::SymEig eig;
  try {
    eig = kernels::sym_eig(a.to_dense());
  } catch (const kernels::NoConvergence& e) {
    return Breakdown{BreakdownStage::EigenNoConvergence, e.what()};
  }
  const std::size_t m = a.size();
  std::vector<double> sqrt_d(m), inv_sqrt_d(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = eig.values[i];
    if (!(d > 0.0))
      return Breakdown{BreakdownStage::NonpositiveEigenvalue,
                       "eigenvalue " + std::to_string(i) + " is " + std::to_string(d)};
    sqrt_d[i] = std::sqrt(d);
    inv_sqrt_d[i] = 1.0 / sqrt_d[i];
  }
  const DenseMatrix x = matmul_tn(eig.vectors, z);
  kernels::ThinQr yr = kernels::householder_qr(scale_rows(sqrt_d, x));
  const DenseMatrix u = scale_rows(inv_sqrt_d, yr.q);
  DenseMatrix q = matmul(eig.vectors, u);
  return detail::finalize(QrFactors{std::move(q), std::move(yr.r), {}});
}

}  // namespace obqr

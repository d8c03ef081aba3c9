#include <cmath>
#include <vector>

#include "obqr/kernels.hpp"

namespace obqr::kernels {

namespace {

// H = I - tau v v^T applied to rows [k, m) of column `y`, with v[0] == 1
// implicit and v[1..] stored below the diagonal of column k of `a`.
void apply_reflector(const DenseMatrix& a, std::size_t k, double tau, std::span<double> y) {
  const auto v = a.col(k).subspan(k + 1);
  auto tail = y.subspan(k + 1);
  const double s = y[k] + dot(v, tail);
  const double ts = tau * s;
  y[k] -= ts;
  axpy(-ts, v, tail);
}

}  // namespace

ThinQr householder_qr(const DenseMatrix& w) {
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  if (m < n) throw std::invalid_argument("householder_qr: requires rows >= cols");

  DenseMatrix a = w;
  std::vector<double> tau(n, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    auto ak = a.col(k);
    const double alpha = ak[k];
    const double xnorm = norm2(ak.subspan(k + 1));
    if (xnorm == 0.0) continue;  // H = I; a negative alpha is fixed by the sign pass below
    const double beta = -std::copysign(std::hypot(alpha, xnorm), alpha);
    tau[k] = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    for (std::size_t i = k + 1; i < m; ++i) ak[i] *= scale;
    ak[k] = beta;
    for (std::size_t j = k + 1; j < n; ++j) apply_reflector(a, k, tau[k], a.col(j));
  }

  ThinQr out{DenseMatrix::identity(m, n), DenseMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) out.r(i, j) = a(i, j);

  // Q = H_0 H_1 ... H_{n-1} [I_n; 0], accumulated backwards.
  for (std::size_t k = n; k-- > 0;) {
    if (tau[k] == 0.0) continue;
    for (std::size_t j = k; j < n; ++j) apply_reflector(a, k, tau[k], out.q.col(j));
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (out.r(k, k) < 0.0) {
      for (std::size_t j = k; j < n; ++j) out.r(k, j) = -out.r(k, j);
      for (double& v : out.q.col(k)) v = -v;
    }
  }
  return out;
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  DenseMatrix g(rows, cols);
  for (double& v : g.data()) v = rng.normal();
  return g;
}

DenseMatrix haar_orthogonal(std::size_t m, Rng& rng) {
  if (m == 0) throw std::invalid_argument("haar_orthogonal: m must be >= 1");
  return householder_qr(gaussian_matrix(m, m, rng)).q;
}

DenseMatrix haar_orthogonal(std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  return haar_orthogonal(m, rng);
}

}  // namespace obqr::kernels

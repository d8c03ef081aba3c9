#include <algorithm>
#include <cmath>
#include <functional>

#include "obqr/kernels.hpp"

namespace obqr::kernels {

double two_norm(const DenseMatrix& m) {
  if (m.empty()) return 0.0;
  const double scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  // Scaling keeps the Gram matrix clear of overflow and underflow.
  const DenseMatrix ms = (1.0 / scale) * m;
  const DenseMatrix gram = ms.rows() >= ms.cols() ? matmul_tn(ms, ms) : matmul_tn(transpose(ms), transpose(ms));
  const SymEig eig = sym_eig(gram);
  return scale * std::sqrt(std::max(eig.values.back(), 0.0));
}

std::vector<double> singular_values(const DenseMatrix& m) {
  if (m.empty()) return {};
  DenseMatrix u = m.rows() >= m.cols() ? m : transpose(m);
  const std::size_t n = u.cols();
  constexpr int kMaxSweeps = 60;
  constexpr double tol = kUnitRoundoff;

  bool converged = (n == 1);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto up = u.col(p);
        auto uq = u.col(q);
        const double alpha = dot(up, up);
        const double beta = dot(uq, uq);
        const double gamma = dot(up, uq);
        if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::abs(zeta) > 1e150
                             ? 0.5 / zeta
                             : std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < up.size(); ++r) {
          const double x = up[r];
          const double y = uq[r];
          up[r] = c * x - s * y;
          uq[r] = s * x + c * y;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) throw NoConvergence(kMaxSweeps);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(u.col(j));
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

}  // namespace obqr::kernels

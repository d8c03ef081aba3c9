#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "obqr/kernels.hpp"

namespace obqr::kernels {

NoConvergence::NoConvergence(int sweeps)
    : std::runtime_error("Jacobi eigensolver did not converge in " + std::to_string(sweeps) +
                         " sweeps"),
      sweeps_(sweeps) {}

SymEig sym_eig(const DenseMatrix& s, int max_sweeps) {
  if (s.rows() != s.cols()) throw std::invalid_argument("sym_eig: matrix must be square");
  const std::size_t m = s.rows();
  DenseMatrix a = s;
  DenseMatrix v = DenseMatrix::identity(m);

  // Off-diagonal entries below tol * sqrt(|a_pp a_qq|) are left alone; this
  // relative test is what lets Jacobi resolve small eigenvalues of graded
  // SPD matrices.
  constexpr double tol = kUnitRoundoff;

  bool converged = (m == 1);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        if (std::abs(apq) <= tol * std::sqrt(std::abs(app) * std::abs(aqq))) continue;
        rotated = true;

        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        auto colp = a.col(p);
        auto colq = a.col(q);
        for (std::size_t r = 0; r < m; ++r) {
          if (r == p || r == q) continue;
          const double arp = colp[r];
          const double arq = colq[r];
          colp[r] = c * arp - sn * arq;
          colq[r] = sn * arp + c * arq;
          a(p, r) = colp[r];
          a(q, r) = colq[r];
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        auto vp = v.col(p);
        auto vq = v.col(q);
        for (std::size_t r = 0; r < m; ++r) {
          const double x = vp[r];
          const double y = vq[r];
          vp[r] = c * x - sn * y;
          vq[r] = sn * x + c * y;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) throw NoConvergence(max_sweeps);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymEig out{DenseMatrix(m, m), std::vector<double>(m)};
  for (std::size_t k = 0; k < m; ++k) {
    out.values[k] = a(order[k], order[k]);
    const auto src = v.col(order[k]);
    std::copy(src.begin(), src.end(), out.vectors.col(k).begin());
  }
  return out;
}

}  // namespace obqr::kernels

#include <string>

#include "finalize.hpp"
#include "obqr/kernels.hpp"
#include "obqr/oblique.hpp"

namespace obqr {

namespace detail {

FactorizationOutcome finalize(QrFactors factors) {
  const DenseMatrix& r = factors.r;
  for (std::size_t k = 0; k < r.rows(); ++k)
    if (!(r(k, k) > 0.0))
      return Breakdown{BreakdownStage::SingularR, "R diagonal not positive at " + std::to_string(k)};
  if (!factors.q.all_finite() || !factors.r.all_finite())
    return Breakdown{BreakdownStage::SingularR, "non-finite factors"};
  return factors;
}

}  // namespace detail

namespace {

void require_tall(const InnerProduct& a, const DenseMatrix& z, const char* who) {
  if (z.rows() != a.size()) throw std::invalid_argument(std::string(who) + ": Z rows must match A");
  if (z.rows() < z.cols()) throw std::invalid_argument(std::string(who) + ": requires m >= n");
}

}  // namespace

FactorizationOutcome cholqr(const InnerProduct& a, const DenseMatrix& z) {
  require_tall(a, z, "cholqr");
  const DenseMatrix b = ip_apply(a, z);
  const DenseMatrix c = matmul_tn(z, b);
  DenseMatrix r;
  try {
    r = kernels::cholesky_upper(c);
  } catch (const kernels::NotPositiveDefinite& e) {
    return Breakdown{BreakdownStage::CholeskyOfNormal, e.what()};
  }
  DenseMatrix q = kernels::tri_solve_right(z, r);
  return detail::finalize(QrFactors{std::move(q), std::move(r), {}});
}

FactorizationOutcome pre_cholqr(const InnerProduct& a, const DenseMatrix& z) {
  require_tall(a, z, "pre_cholqr");
  kernels::ThinQr ys = kernels::householder_qr(z);
  for (std::size_t k = 0; k < ys.r.rows(); ++k)
    if (ys.r(k, k) == 0.0)
      return Breakdown{BreakdownStage::SingularR, "Z is rank deficient at column " + std::to_string(k)};

  FactorizationOutcome inner = cholqr(a, ys.q);
  if (!inner) return inner;
  QrFactors& qu = inner.factors();

  QrFactors out;
  out.r = matmul(qu.r, ys.r);
  out.diagnostics.emplace(diag::kPreCholqrUNorm, kernels::two_norm(qu.r));
  out.diagnostics.emplace(diag::kPreCholqrSNorm, kernels::two_norm(ys.r));
  out.q = std::move(qu.q);
  return detail::finalize(std::move(out));
}

}  // namespace obqr

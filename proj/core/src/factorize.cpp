#include <stdexcept>

#include "obqr/kernels.hpp"
#include "obqr/oblique.hpp"

namespace obqr {

std::optional<double> QrFactors::diagnostic(std::string_view key) const {
  const auto it = diagnostics.find(key);
  if (it == diagnostics.end()) return std::nullopt;
  return it->second;
}

std::string_view to_string(BreakdownStage stage) {
  switch (stage) {
    case BreakdownStage::CholeskyOfNormal: return "cholesky_of_normal";
    case BreakdownStage::CholeskyOfA: return "cholesky_of_a";
    case BreakdownStage::NonpositiveEigenvalue: return "nonpositive_eigenvalue";
    case BreakdownStage::EigenNoConvergence: return "eigen_no_convergence";
    case BreakdownStage::ANormNonpositive: return "a_norm_nonpositive";
    case BreakdownStage::SingularR: return "singular_r";
  }
  return "unknown";
}

const QrFactors& FactorizationOutcome::factors() const {
  if (!ok()) throw std::logic_error("FactorizationOutcome: breakdown (" + std::string(to_string(breakdown().stage)) + ")");
  return std::get<QrFactors>(value_);
}

QrFactors& FactorizationOutcome::factors() {
  if (!ok()) throw std::logic_error("FactorizationOutcome: breakdown (" + std::string(to_string(breakdown().stage)) + ")");
  return std::get<QrFactors>(value_);
}

const Breakdown& FactorizationOutcome::breakdown() const {
  if (ok()) throw std::logic_error("FactorizationOutcome: no breakdown");
  return std::get<Breakdown>(value_);
}

std::string_view to_string(Algorithm alg) {
  switch (alg) {
    case Algorithm::Cholqr: return "cholqr";
    case Algorithm::PreCholqr: return "pre-cholqr";
    case Algorithm::CholEqr: return "chol-eqr";
    case Algorithm::SyevEqr: return "syev-eqr";
    case Algorithm::Cgs: return "cgs";
    case Algorithm::MgsCol: return "mgs-col";
    case Algorithm::MgsRow: return "mgs-row";
    case Algorithm::Cgs2: return "cgs2";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm alg : kAllAlgorithms)
    if (to_string(alg) == name) return alg;
  return std::nullopt;
}

FactorizationOutcome factorize(Algorithm alg, const InnerProduct& a, const DenseMatrix& z,
                               MgsOptions mgs_options) {
  switch (alg) {
    case Algorithm::Cholqr: return cholqr(a, z);
    case Algorithm::PreCholqr: return pre_cholqr(a, z);
    case Algorithm::CholEqr: return chol_eqr(a, z);
    case Algorithm::SyevEqr: return syev_eqr(a, z);
    case Algorithm::Cgs: return cgs(a, z);
    case Algorithm::MgsCol: return mgs(a, z, MgsOrder::ColumnOriented, mgs_options);
    case Algorithm::MgsRow: return mgs(a, z, MgsOrder::RowOriented, mgs_options);
    case Algorithm::Cgs2: return cgs2(a, z);
  }
  throw std::invalid_argument("factorize: unknown algorithm");
}

std::vector<double> gls_solve(const QrFactors& factors, const InnerProduct& a,
                              std::span<const double> b) {
  if (b.size() != factors.q.rows() || a.size() != b.size())
    throw std::invalid_argument("gls_solve: dimension mismatch");
  std::vector<double> ab(b.size());
  a.apply(b, ab);
  const DenseMatrix rhs = matmul_tn(factors.q, DenseMatrix::column(ab));
  const DenseMatrix x = kernels::tri_solve_left(factors.r, kernels::Triangle::Upper, rhs);
  return {x.data().begin(), x.data().end()};
}

}  // namespace obqr

#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "obqr/dense_matrix.hpp"
#include "obqr/inner_product.hpp"

// QR factorization Z = QR in the inner product <x, y> = x^T A y: Q^T A Q = I,
// R upper triangular with positive diagonal.
namespace obqr {

/// Algorithm-specific scalars recorded during a factorization.
namespace diag {
/// MGS: max over the run of ||z||_2 / ||z||_A for every intermediate column.
inline constexpr std::string_view kMgsNormRatio = "mgs_norm_ratio";
/// PRE-CHOLQR: ||U||_2 and ||S||_2 of the inner CHOLQR and Householder factors.
inline constexpr std::string_view kPreCholqrUNorm = "pre_cholqr_u_norm";
inline constexpr std::string_view kPreCholqrSNorm = "pre_cholqr_s_norm";
}  // namespace diag

struct QrFactors {
  DenseMatrix q;
  DenseMatrix r;
  std::map<std::string, double, std::less<>> diagnostics;

  std::optional<double> diagnostic(std::string_view key) const;
};

enum class BreakdownStage {
  CholeskyOfNormal,       ///< chol(Z^T A Z) hit a non-positive pivot
  CholeskyOfA,            ///< chol(A) hit a non-positive pivot
  NonpositiveEigenvalue,  ///< eig(A) returned an eigenvalue <= 0
  EigenNoConvergence,     ///< eig(A) exceeded its sweep cap
  ANormNonpositive,       ///< a Gram-Schmidt column had x^T A x <= 0
  SingularR,              ///< R has a zero diagonal or the factors are not finite
};

std::string_view to_string(BreakdownStage stage);

struct Breakdown {
  BreakdownStage stage;
  std::string detail;
};

/// Either factors or the reason the factorization could not complete.
class FactorizationOutcome {
 public:
  FactorizationOutcome(QrFactors factors) : value_(std::move(factors)) {}  // NOLINT
  FactorizationOutcome(Breakdown breakdown) : value_(std::move(breakdown)) {}  // NOLINT

  bool ok() const noexcept { return std::holds_alternative<QrFactors>(value_); }
  explicit operator bool() const noexcept { return ok(); }

  /// Throws std::logic_error on a breakdown.
  const QrFactors& factors() const;
  QrFactors& factors();
  const Breakdown& breakdown() const;

 private:
  std::variant<QrFactors, Breakdown> value_;
};

enum class Algorithm { Cholqr, PreCholqr, CholEqr, SyevEqr, Cgs, MgsCol, MgsRow, Cgs2 };

inline constexpr std::array<Algorithm, 8> kAllAlgorithms = {
    Algorithm::Cholqr, Algorithm::PreCholqr, Algorithm::CholEqr, Algorithm::SyevEqr,
    Algorithm::Cgs,    Algorithm::MgsCol,    Algorithm::MgsRow,  Algorithm::Cgs2};

/// Command-line names: cholqr, pre-cholqr, chol-eqr, syev-eqr, cgs, mgs-col, mgs-row, cgs2.
std::string_view to_string(Algorithm alg);
std::optional<Algorithm> parse_algorithm(std::string_view name);

enum class MgsOrder { ColumnOriented, RowOriented };

struct MgsOptions {
  /// Track the norm ratio for every intermediate column. The row-oriented
  /// variant pays one extra A-apply per update for this; when false only the
  /// columns about to be normalized are sampled.
  bool full_norm_ratio = true;
};

/// B = AZ, C = Z^T B, R = chol(C), Q = Z R^{-1}.
FactorizationOutcome cholqr(const InnerProduct& a, const DenseMatrix& z);

/// Householder QR Z = YS first, then CHOLQR of Y: Q U = Y, R = U S.
FactorizationOutcome pre_cholqr(const InnerProduct& a, const DenseMatrix& z);

/// A = C^T C, [Y, R] = qr(C Z), solve C Q = Y.
FactorizationOutcome chol_eqr(const InnerProduct& a, const DenseMatrix& z);

/// A = V D V^T, [Y, R] = qr(D^{1/2} V^T Z), Q = V D^{-1/2} Y.
FactorizationOutcome syev_eqr(const InnerProduct& a, const DenseMatrix& z);

FactorizationOutcome cgs(const InnerProduct& a, const DenseMatrix& z);
FactorizationOutcome mgs(const InnerProduct& a, const DenseMatrix& z, MgsOrder order,
                         MgsOptions options = {});

/// Classical Gram-Schmidt with one full reorthogonalization of every column.
FactorizationOutcome cgs2(const InnerProduct& a, const DenseMatrix& z);

FactorizationOutcome factorize(Algorithm alg, const InnerProduct& a, const DenseMatrix& z,
                               MgsOptions mgs_options = {});

/// Generalized least squares estimate x = R^{-1} Q^T A b minimizing ||Zx - b||_A.
std::vector<double> gls_solve(const QrFactors& factors, const InnerProduct& a,
                              std::span<const double> b);

}  // namespace obqr

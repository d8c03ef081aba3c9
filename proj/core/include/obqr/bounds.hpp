#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "obqr/dense_matrix.hpp"
#include "obqr/inner_product.hpp"
#include "obqr/oblique.hpp"

// Measured errors of a computed factorization and the theoretical bounds they
// are compared against. Bounds drop every constant and every polynomial
// factor in m and n, and are normalized the same way as the measured field
// they bound (relative representativity errors are divided by ||Z||_2 or
// ||Z||_A).
namespace obqr::bounds {

/// Which measured quantity a bound applies to.
enum class ErrorField { Orthogonality, Repr2Norm, ReprANorm, ReprComponentwise };

std::string_view to_string(ErrorField field);
std::optional<ErrorField> parse_error_field(std::string_view name);

struct ErrorReport {
  double orth_error = 0.0;          ///< ||Q^T A Q - I||_2
  double repr_2norm = 0.0;          ///< ||Z - QR||_2 / ||Z||_2
  double repr_anorm = 0.0;          ///< ||Z - QR||_A / ||Z||_A
  double repr_componentwise = 0.0;  ///< see componentwise_ratio
  std::optional<BreakdownStage> breakdown;

  double value(ErrorField field) const;
};

/// Spectral quantities the bounds need; exact when taken from a constructed
/// test instance.
struct ProblemSpectra {
  double norm_a = 1.0;           ///< ||A||_2
  double norm_a_inv_half = 1.0;  ///< ||A^{-1/2}||_2
  double kappa_a = 1.0;
  double kappa_z = 1.0;
  double kappa_a_half_z = 1.0;
};

/// Spectra of an arbitrary problem: from A's eigendata when present
/// (identity is handled directly) and singular values of Z and A^{1/2} Z.
/// Throws std::invalid_argument for a dense or tridiagonal A without eigendata.
ProblemSpectra measure_spectra(const InnerProduct& a, const DenseMatrix& z);

/// A^{1/2} = V diag(sqrt d) V^T from eigendata; identity for the identity kind.
DenseMatrix sqrt_inner_product(const InnerProduct& a);

/// max_ij |Z - QR|_ij / (|Q||R| + |Z|)_ij over entries whose denominator is at
/// least u * max|Z|.
double componentwise_ratio(const DenseMatrix& z, const DenseMatrix& q, const DenseMatrix& r);

/// Errors of `outcome` as a factorization of Z in the A inner product. A
/// breakdown yields NaN errors with the stage recorded.
ErrorReport measure_errors(const InnerProduct& a, const DenseMatrix& z,
                           const FactorizationOutcome& outcome);

class MissingDiagnostic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedBound {
  std::string name;
  ErrorField field;
  double value;
  bool tight;  ///< a bound the experiments are expected to track closely
};

struct BoundSet {
  std::vector<NamedBound> bounds;

  const NamedBound* find(std::string_view name) const;
};

/// Every bound name evaluate_bounds can produce, in CSV column order.
const std::vector<std::string>& all_bound_names();

/// The measured field a named bound applies to; nullopt for unknown names.
std::optional<ErrorField> bound_field(std::string_view name);

/// Whether the bound is one the experiments are expected to track within a
/// few orders of magnitude.
bool bound_is_tight(std::string_view name);

/// Bounds for one algorithm's successful factorization. Throws
/// MissingDiagnostic when an MGS or PRE-CHOLQR diagnostic is absent.
BoundSet evaluate_bounds(Algorithm alg, const InnerProduct& a, const DenseMatrix& z,
                         const QrFactors& factors, const ProblemSpectra& spectra);

struct SingularValueDeviation {
  double max_rel_r = 0.0;  ///< max_i |sigma_i(R) - sigma_i(A^{1/2}Z)| / sigma_i(A^{1/2}Z)
  double q_norm = 0.0;     ///< | ||Q||_2 sigma_n(A^{1/2} Zhat) - 1 |
};

/// Checks sigma_i(R) = sigma_i(A^{1/2} Z) and ||Q||_2 = 1 / sigma_n(A^{1/2} Zhat),
/// Zhat an orthonormal basis of range(Z) from Householder QR.
SingularValueDeviation singular_value_identities(const InnerProduct& a, const DenseMatrix& z,
                                                 const QrFactors& factors);

}  // namespace obqr::bounds

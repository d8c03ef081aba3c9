#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "obqr/dense_matrix.hpp"

namespace obqr {

/// Exact spectral factorization S = V diag(values) V^T, values ascending.
struct Eigendata {
  DenseMatrix vectors;
  std::vector<double> values;
};

/// The SPD operator defining <x, y> = x^T A y.
///
/// Three storage forms are supported. The dense form is symmetrized on
/// construction, so S == S^T holds bitwise afterwards.
class InnerProduct {
 public:
  enum class Kind { Identity, Dense, Tridiagonal };

  static InnerProduct identity(std::size_t m);
  static InnerProduct dense(DenseMatrix s);

  /// Dense form that also carries its exact eigen-factorization. Throws
  /// std::invalid_argument if a value is not positive or V diag(d) V^T
  /// differs from S by more than 1e-13 * max(d) in any entry.
  static InnerProduct dense(DenseMatrix s, Eigendata eig);

  static InnerProduct tridiagonal(std::vector<double> diag, std::vector<double> offdiag);

  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return m_; }

  /// Valid for the dense kind only.
  const DenseMatrix& matrix() const;
  std::span<const double> diagonal() const noexcept { return diag_; }
  std::span<const double> off_diagonal() const noexcept { return offdiag_; }

  const std::optional<Eigendata>& eig() const noexcept { return eig_; }

  DenseMatrix to_dense() const;

  /// y = A x for a single vector.
  void apply(std::span<const double> x, std::span<double> y) const;

 private:
  Kind kind_ = Kind::Identity;
  std::size_t m_ = 0;
  DenseMatrix dense_;
  std::vector<double> diag_;
  std::vector<double> offdiag_;
  std::optional<Eigendata> eig_;
};

/// A * X. Dense: full multiply, tridiagonal: three-band stencil, identity: copy.
DenseMatrix ip_apply(const InnerProduct& a, const DenseMatrix& x);

/// Flops spent by ip_apply on an m x n block.
std::uint64_t ip_apply_flops(const InnerProduct& a, std::size_t n);

/// sqrt(max(x^T A x, 0)).
double a_norm(const InnerProduct& a, std::span<const double> x);

}  // namespace obqr

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace obqr {

/// Unit roundoff for IEEE double precision, 2^-53.
inline constexpr double kUnitRoundoff = 0x1p-53;

/// Column-major real matrix. A default-constructed matrix is empty (0x0);
/// every other instance has at least one row and one column.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  /// Zero-filled rows x cols matrix.
  DenseMatrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of column-major `data`. Throws std::invalid_argument on
  /// a size mismatch or a non-finite entry.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Row-major literal, convenient for small fixed matrices:
  /// `DenseMatrix::from_rows({{4, 2}, {2, 5}})`.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  /// First `cols` columns of the rows x rows identity.
  static DenseMatrix identity(std::size_t rows, std::size_t cols);

  static DenseMatrix column(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const noexcept {
    return {data_.data() + j * rows_, rows_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool all_finite() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix transpose(const DenseMatrix& a);

/// a * b
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// a^T * b
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

/// Entrywise absolute value.
DenseMatrix abs(const DenseMatrix& a);

double max_abs(const DenseMatrix& a);

/// diag(d) * a, i.e. row i of `a` scaled by d[i].
DenseMatrix scale_rows(std::span<const double> d, const DenseMatrix& a);

/// Leading `cols` columns.
DenseMatrix leading_columns(const DenseMatrix& a, std::size_t cols);

double dot(std::span<const double> x, std::span<const double> y) noexcept;

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;

/// Euclidean norm with scaling against overflow.
double norm2(std::span<const double> x) noexcept;

}  // namespace obqr

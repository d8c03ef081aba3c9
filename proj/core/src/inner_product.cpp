#include "obqr/inner_product.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace obqr {

InnerProduct InnerProduct::identity(std::size_t m) {
  if (m == 0) throw std::invalid_argument("InnerProduct::identity: m must be >= 1");
  InnerProduct ip;
  ip.kind_ = Kind::Identity;
  ip.m_ = m;
  return ip;
}

InnerProduct InnerProduct::dense(DenseMatrix s) {
  if (s.rows() != s.cols() || s.empty())
    throw std::invalid_argument("InnerProduct::dense: matrix must be square");
  for (std::size_t j = 0; j < s.cols(); ++j)
    for (std::size_t i = j + 1; i < s.rows(); ++i) {
      const double v = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  InnerProduct ip;
  ip.kind_ = Kind::Dense;
  ip.m_ = s.rows();
  ip.dense_ = std::move(s);
  return ip;
}

InnerProduct InnerProduct::dense(DenseMatrix s, Eigendata eig) {
  InnerProduct ip = dense(std::move(s));
  const std::size_t m = ip.m_;
  if (eig.vectors.rows() != m || eig.vectors.cols() != m || eig.values.size() != m)
    throw std::invalid_argument("InnerProduct::dense: eigendata has wrong dimensions");
  double dmax = 0.0;
  for (double d : eig.values) {
    if (!(d > 0.0)) throw std::invalid_argument("InnerProduct::dense: eigenvalue not positive");
    dmax = std::max(dmax, d);
  }
  const DenseMatrix vd = transpose(scale_rows(eig.values, transpose(eig.vectors)));
  const DenseMatrix recon = matmul(vd, transpose(eig.vectors));
  if (max_abs(recon - ip.dense_) > 1e-13 * dmax)
    throw std::invalid_argument("InnerProduct::dense: eigendata does not reproduce the matrix");
  ip.eig_ = std::move(eig);
  return ip;
}

InnerProduct InnerProduct::tridiagonal(std::vector<double> diag, std::vector<double> offdiag) {
  if (diag.empty() || offdiag.size() + 1 != diag.size())
    throw std::invalid_argument("InnerProduct::tridiagonal: need m diagonal and m-1 off-diagonal entries");
  InnerProduct ip;
  ip.kind_ = Kind::Tridiagonal;
  ip.m_ = diag.size();
  ip.diag_ = std::move(diag);
  ip.offdiag_ = std::move(offdiag);
  return ip;
}

const DenseMatrix& InnerProduct::matrix() const {
  if (kind_ != Kind::Dense) throw std::logic_error("InnerProduct::matrix: not a dense inner product");
  return dense_;
}

DenseMatrix InnerProduct::to_dense() const {
  switch (kind_) {
    case Kind::Identity:
      return DenseMatrix::identity(m_);
    case Kind::Dense:
      return dense_;
    case Kind::Tridiagonal: {
      DenseMatrix s(m_, m_);
      for (std::size_t i = 0; i < m_; ++i) s(i, i) = diag_[i];
      for (std::size_t i = 0; i + 1 < m_; ++i) {
        s(i, i + 1) = offdiag_[i];
        s(i + 1, i) = offdiag_[i];
      }
      return s;
    }
  }
  return {};
}

void InnerProduct::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != m_ || y.size() != m_) throw std::invalid_argument("InnerProduct::apply: size mismatch");
  switch (kind_) {
    case Kind::Identity:
      std::copy(x.begin(), x.end(), y.begin());
      return;
    case Kind::Dense:
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t k = 0; k < m_; ++k)
        if (x[k] != 0.0) axpy(x[k], dense_.col(k), y);
      return;
    case Kind::Tridiagonal: {
      if (m_ == 1) {
        y[0] = diag_[0] * x[0];
        return;
      }
      y[0] = diag_[0] * x[0] + offdiag_[0] * x[1];
      for (std::size_t i = 1; i + 1 < m_; ++i)
        y[i] = offdiag_[i - 1] * x[i - 1] + diag_[i] * x[i] + offdiag_[i] * x[i + 1];
      y[m_ - 1] = offdiag_[m_ - 2] * x[m_ - 2] + diag_[m_ - 1] * x[m_ - 1];
      return;
    }
  }
}

DenseMatrix ip_apply(const InnerProduct& a, const DenseMatrix& x) {
  if (x.rows() != a.size()) throw std::invalid_argument("ip_apply: dimension mismatch");
  if (a.kind() == InnerProduct::Kind::Identity) return x;
  if (a.kind() == InnerProduct::Kind::Dense) return matmul(a.matrix(), x);
  DenseMatrix y(x.rows(), x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) a.apply(x.col(j), y.col(j));
  return y;
}

std::uint64_t ip_apply_flops(const InnerProduct& a, std::size_t n) {
  const std::uint64_t m = a.size();
  switch (a.kind()) {
    case InnerProduct::Kind::Identity:
      return 0;
    case InnerProduct::Kind::Dense:
      return 2 * m * m * n;
    case InnerProduct::Kind::Tridiagonal:
      return (m >= 2 ? 5 * m - 4 : 1) * n;
  }
  return 0;
}

double a_norm(const InnerProduct& a, std::span<const double> x) {
  std::vector<double> ax(x.size());
  a.apply(x, ax);
  return std::sqrt(std::max(dot(x, ax), 0.0));
}

}  // namespace obqr

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "finalize.hpp"
#include "obqr/oblique.hpp"

namespace obqr {

namespace {

void require_tall(const InnerProduct& a, const DenseMatrix& z, const char* who) {
  if (z.rows() != a.size()) throw std::invalid_argument(std::string(who) + ": Z rows must match A");
  if (z.rows() < z.cols()) throw std::invalid_argument(std::string(who) + ": requires m >= n");
}

Breakdown nonpositive(std::size_t col, double value) {
  return Breakdown{BreakdownStage::ANormNonpositive,
                   "column " + std::to_string(col) + ": x^T A x = " + std::to_string(value)};
}

// v -= Q(:, 0:k) * coeffs
void subtract_projection(const DenseMatrix& q, std::span<const double> coeffs, std::span<double> v) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) axpy(-coeffs[i], q.col(i), v);
}

// coeffs[i] = Q(:, i)^T w for i < k
void project(const DenseMatrix& q, std::size_t k, std::span<const double> w, std::span<double> coeffs) {
  for (std::size_t i = 0; i < k; ++i) coeffs[i] = dot(q.col(i), w);
}

void normalize_into(std::span<const double> v, double rjj, std::span<double> qj) {
  for (std::size_t i = 0; i < v.size(); ++i) qj[i] = v[i] / rjj;
}

}  // namespace

FactorizationOutcome cgs(const InnerProduct& a, const DenseMatrix& z) {
  require_tall(a, z, "cgs");
  const std::size_t m = z.rows();
  const std::size_t n = z.cols();
  QrFactors f{DenseMatrix(m, n), DenseMatrix(n, n), {}};
  std::vector<double> v(m), w(m), coeffs(n);

  for (std::size_t j = 0; j < n; ++j) {
    const auto zj = z.col(j);
    a.apply(zj, w);
    project(f.q, j, w, coeffs);
    std::copy(zj.begin(), zj.end(), v.begin());
    subtract_projection(f.q, std::span(coeffs).first(j), v);

    a.apply(v, w);
    const double s = dot(v, w);
    if (!(s > 0.0)) return nonpositive(j, s);
    const double rjj = std::sqrt(s);
    for (std::size_t i = 0; i < j; ++i) f.r(i, j) = coeffs[i];
    f.r(j, j) = rjj;
    normalize_into(v, rjj, f.q.col(j));
  }
  return detail::finalize(std::move(f));
}

FactorizationOutcome cgs2(const InnerProduct& a, const DenseMatrix& z) {
  require_tall(a, z, "cgs2");
  const std::size_t m = z.rows();
  const std::size_t n = z.cols();
  QrFactors f{DenseMatrix(m, n), DenseMatrix(n, n), {}};
  std::vector<double> v(m), w(m), first(n), second(n);

  for (std::size_t j = 0; j < n; ++j) {
    const auto zj = z.col(j);
    std::copy(zj.begin(), zj.end(), v.begin());

    a.apply(v, w);
    project(f.q, j, w, first);
    subtract_projection(f.q, std::span(first).first(j), v);

    a.apply(v, w);
    project(f.q, j, w, second);
    subtract_projection(f.q, std::span(second).first(j), v);

    a.apply(v, w);
    const double s = dot(v, w);
    if (!(s > 0.0)) return nonpositive(j, s);
    const double rjj = std::sqrt(s);
    for (std::size_t i = 0; i < j; ++i) f.r(i, j) = first[i] + second[i];
    f.r(j, j) = rjj;
    normalize_into(v, rjj, f.q.col(j));
  }
  return detail::finalize(std::move(f));
}

FactorizationOutcome mgs(const InnerProduct& a, const DenseMatrix& z, MgsOrder order,
                         MgsOptions options) {
  require_tall(a, z, "mgs");
  const std::size_t m = z.rows();
  const std::size_t n = z.cols();
  QrFactors f{DenseMatrix(m, n), DenseMatrix(n, n), {}};
  std::vector<double> w(m), t(m);
  double ratio = 0.0;

  // ||v||_2 / ||v||_A given w = A v.
  auto sample_ratio = [&](std::span<const double> v, std::span<const double> av) {
    const double s = dot(v, av);
    if (s > 0.0) ratio = std::max(ratio, norm2(v) / std::sqrt(s));
  };

  if (order == MgsOrder::ColumnOriented) {
    std::vector<double> v(m);
    for (std::size_t j = 0; j < n; ++j) {
      const auto zj = z.col(j);
      std::copy(zj.begin(), zj.end(), v.begin());
      for (std::size_t i = 0; i < j; ++i) {
        a.apply(v, w);
        if (options.full_norm_ratio) sample_ratio(v, w);
        const double rij = dot(f.q.col(i), w);
        f.r(i, j) = rij;
        axpy(-rij, f.q.col(i), v);
      }
      a.apply(v, w);
      const double s = dot(v, w);
      if (!(s > 0.0)) return nonpositive(j, s);
      sample_ratio(v, w);
      const double rjj = std::sqrt(s);
      f.r(j, j) = rjj;
      normalize_into(v, rjj, f.q.col(j));
    }
  } else {
    DenseMatrix work = z;
    for (std::size_t i = 0; i < n; ++i) {
      const auto vi = work.col(i);
      a.apply(vi, w);
      const double s = dot(vi, w);
      if (!(s > 0.0)) return nonpositive(i, s);
      sample_ratio(vi, w);
      const double rii = std::sqrt(s);
      f.r(i, i) = rii;
      auto qi = f.q.col(i);
      normalize_into(vi, rii, qi);

      a.apply(qi, w);
      for (std::size_t j = i + 1; j < n; ++j) {
        auto vj = work.col(j);
        if (options.full_norm_ratio) {
          a.apply(vj, t);
          sample_ratio(vj, t);
        }
        const double rij = dot(w, vj);
        f.r(i, j) = rij;
        axpy(-rij, qi, vj);
      }
    }
  }
  f.diagnostics.emplace(diag::kMgsNormRatio, ratio);
  return detail::finalize(std::move(f));
}

}  // namespace obqr

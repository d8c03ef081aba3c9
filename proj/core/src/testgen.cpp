#include "obqr/testgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "obqr/kernels.hpp"

namespace obqr::testgen {

namespace {

void require_case(int case_id) {
  if (case_id < 1 || case_id > 5)
    throw InvalidCase("test case must be 1..5, got " + std::to_string(case_id));
}

// V diag(d) V^T
DenseMatrix spectral_product(const DenseMatrix& v, std::span<const double> d) {
  const DenseMatrix vt = transpose(v);
  return matmul(transpose(scale_rows(d, vt)), vt);
}

}  // namespace

std::vector<double> log_spaced_eigenvalues(std::size_t m, double kappa_a) {
  if (m == 0) throw std::invalid_argument("log_spaced_eigenvalues: m must be >= 1");
  if (!(kappa_a >= 1.0)) throw std::invalid_argument("log_spaced_eigenvalues: kappa_a must be >= 1");
  std::vector<double> d(m, 1.0);
  if (m == 1) return d;
  const double alpha = std::log10(kappa_a) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) d[i] = std::pow(10.0, alpha * static_cast<double>(i));
  d[m - 1] = kappa_a;
  return d;
}

std::vector<double> log_spaced_singular_values(std::size_t n, double kappa_z) {
  if (n == 0) throw std::invalid_argument("log_spaced_singular_values: n must be >= 1");
  if (!(kappa_z >= 1.0)) throw std::invalid_argument("log_spaced_singular_values: kappa_z must be >= 1");
  if (n == 1) return {kappa_z};
  std::vector<double> s(n);
  const double e = std::log10(kappa_z);
  for (std::size_t k = 0; k < n; ++k)
    s[k] = std::pow(10.0, e * static_cast<double>(n - 1 - k) / static_cast<double>(n - 1));
  return s;
}

std::vector<std::size_t> selected_eigen_indices(int case_id, std::size_t m, std::size_t n) {
  require_case(case_id);
  if (n == 0 || n > m) throw std::invalid_argument("selected_eigen_indices: need 1 <= n <= m");
  std::vector<std::size_t> idx;
  switch (case_id) {
    case 1:
      for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
      break;
    case 2:
      for (std::size_t i = m - n; i < m; ++i) idx.push_back(i);
      break;
    case 3:
    case 5: {
      const std::size_t low = (n + 1) / 2;
      const std::size_t high = n / 2;
      for (std::size_t i = 0; i < low; ++i) idx.push_back(i);
      for (std::size_t i = m - high; i < m; ++i) idx.push_back(i);
      break;
    }
    default:
      throw InvalidCase("case 4 has no eigenvector selection");
  }
  std::sort(idx.begin(), idx.end(), std::greater<>());
  return idx;
}

Pairing pairing_policy(int case_id, std::span<const double> sigma_z,
                       std::span<const std::size_t> selected, std::span<const double> d) {
  require_case(case_id);
  if (sigma_z.size() != selected.size())
    throw std::invalid_argument("pairing_policy: singular value and eigenvector counts differ");
  Pairing p;
  p.u_cols.assign(selected.begin(), selected.end());
  std::stable_sort(p.u_cols.begin(), p.u_cols.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
  p.sigma.assign(sigma_z.begin(), sigma_z.end());
  std::stable_sort(p.sigma.begin(), p.sigma.end(), std::greater<>());
  return p;
}

TestInstance build_instance(int case_id, std::size_t m, std::size_t n, double kappa_a,
                            double kappa_z, std::uint64_t seed) {
  require_case(case_id);
  if (n == 0 || n > m) throw std::invalid_argument("build_instance: need m >= n >= 1");
  if (!(kappa_a >= 1.0) || !(kappa_z >= 1.0))
    throw std::invalid_argument("build_instance: condition numbers must be >= 1");

  Rng v_stream = Rng::substream(seed, kStreamV);
  DenseMatrix v = kernels::haar_orthogonal(m, v_stream);
  std::vector<double> d = log_spaced_eigenvalues(m, kappa_a);

  TestInstance inst;
  inst.case_id = case_id;
  inst.m = m;
  inst.n = n;
  inst.kappa_a = d.back() / d.front();
  inst.seed = seed;

  DenseMatrix u(m, n);
  std::vector<double> sigma;
  if (case_id == 4) {
    Rng u_stream = Rng::substream(seed, kStreamU);
    u = leading_columns(kernels::haar_orthogonal(m, u_stream), n);
    sigma = log_spaced_singular_values(n, kappa_z);
  } else {
    const auto selected = selected_eigen_indices(case_id, m, n);
    if (case_id == 5) {
      inst.truth.u_cols = selected;
      for (std::size_t idx : selected) sigma.push_back(1.0 / std::sqrt(d[idx]));
    } else {
      Pairing p = pairing_policy(case_id, log_spaced_singular_values(n, kappa_z), selected, d);
      inst.truth.u_cols = std::move(p.u_cols);
      sigma = std::move(p.sigma);
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto src = v.col(inst.truth.u_cols[k]);
      std::copy(src.begin(), src.end(), u.col(k).begin());
    }
  }

  Rng w_stream = Rng::substream(seed, kStreamW);
  const DenseMatrix w = kernels::haar_orthogonal(n, w_stream);

  DenseMatrix u_sigma = u;
  for (std::size_t k = 0; k < n; ++k)
    for (double& x : u_sigma.col(k)) x *= sigma[k];
  inst.z = matmul(u_sigma, transpose(w));

  inst.truth.sigma_z = sigma;
  const auto [smin, smax] = std::minmax_element(sigma.begin(), sigma.end());
  inst.kappa_z = *smax / *smin;

  if (case_id == 4) {
    std::vector<double> sqrt_d(m);
    for (std::size_t i = 0; i < m; ++i) sqrt_d[i] = std::sqrt(d[i]);
    const DenseMatrix a_half = spectral_product(v, sqrt_d);
    inst.truth.sigma_a_half_z = kernels::singular_values(matmul(a_half, inst.z));
  } else {
    for (std::size_t k = 0; k < n; ++k)
      inst.truth.sigma_a_half_z.push_back(std::sqrt(d[inst.truth.u_cols[k]]) * sigma[k]);
    std::sort(inst.truth.sigma_a_half_z.begin(), inst.truth.sigma_a_half_z.end(), std::greater<>());
  }
  inst.truth.kappa_a_half_z = inst.truth.sigma_a_half_z.front() / inst.truth.sigma_a_half_z.back();

  DenseMatrix a = spectral_product(v, d);
  inst.a = InnerProduct::dense(std::move(a), Eigendata{std::move(v), std::move(d)});
  return inst;
}

std::vector<SweepPoint> sweep_plan(double kappa_min, double kappa_max, int points, KappaZRule rule) {
  if (!(kappa_min >= 1.0) || !(kappa_max >= kappa_min))
    throw InvalidRange("sweep_plan: need 1 <= kappa_min <= kappa_max");
  if (points < 2) throw InvalidRange("sweep_plan: need at least 2 points");
  if (const auto* fixed = std::get_if<FixedKappaZ>(&rule); fixed && !(fixed->value >= 1.0))
    throw InvalidRange("sweep_plan: fixed kappa_z must be >= 1");

  const double lo = std::log10(kappa_min);
  const double hi = std::log10(kappa_max);
  std::vector<SweepPoint> plan;
  for (int k = 0; k < points; ++k) {
    const double e = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    const double ka = std::pow(10.0, e);
    const double kz = std::holds_alternative<SqrtOfKappaA>(rule) ? std::pow(10.0, e / 2.0)
                                                                  : std::get<FixedKappaZ>(rule).value;
    plan.push_back({ka, kz});
  }
  return plan;
}

}  // namespace obqr::testgen

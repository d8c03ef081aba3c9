#include "obqr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "obqr/kernels.hpp"

namespace obqr::bounds {

namespace {

constexpr double u = kUnitRoundoff;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string_view to_string(ErrorField field) {
  switch (field) {
    case ErrorField::Orthogonality: return "orth_error";
    case ErrorField::Repr2Norm: return "repr_2norm";
    case ErrorField::ReprANorm: return "repr_anorm";
    case ErrorField::ReprComponentwise: return "repr_componentwise";
  }
  return "unknown";
}

std::optional<ErrorField> parse_error_field(std::string_view name) {
  for (ErrorField f : {ErrorField::Orthogonality, ErrorField::Repr2Norm, ErrorField::ReprANorm,
                       ErrorField::ReprComponentwise})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

double ErrorReport::value(ErrorField field) const {
  switch (field) {
    case ErrorField::Orthogonality: return orth_error;
    case ErrorField::Repr2Norm: return repr_2norm;
    case ErrorField::ReprANorm: return repr_anorm;
    case ErrorField::ReprComponentwise: return repr_componentwise;
  }
  return kNaN;
}

DenseMatrix sqrt_inner_product(const InnerProduct& a) {
  if (a.kind() == InnerProduct::Kind::Identity) return DenseMatrix::identity(a.size());
  if (!a.eig()) throw std::invalid_argument("sqrt_inner_product: inner product has no eigendata");
  const Eigendata& e = *a.eig();
  std::vector<double> sqrt_d(e.values.size());
  std::transform(e.values.begin(), e.values.end(), sqrt_d.begin(), [](double d) { return std::sqrt(d); });
  const DenseMatrix vt = transpose(e.vectors);
  return matmul(transpose(scale_rows(sqrt_d, vt)), vt);
}

ProblemSpectra measure_spectra(const InnerProduct& a, const DenseMatrix& z) {
  ProblemSpectra s;
  const auto sz = kernels::singular_values(z);
  s.kappa_z = sz.front() / sz.back();
  if (a.kind() == InnerProduct::Kind::Identity) {
    s.kappa_a_half_z = s.kappa_z;
    return s;
  }
  if (!a.eig()) throw std::invalid_argument("measure_spectra: inner product has no eigendata");
  const auto& d = a.eig()->values;
  const auto [dmin, dmax] = std::minmax_element(d.begin(), d.end());
  s.norm_a = *dmax;
  s.norm_a_inv_half = 1.0 / std::sqrt(*dmin);
  s.kappa_a = *dmax / *dmin;
  const auto saz = kernels::singular_values(matmul(sqrt_inner_product(a), z));
  s.kappa_a_half_z = saz.front() / saz.back();
  return s;
}

namespace {

// Z - QR and |Q||R| accumulated in extended precision, so the rounding of the
// measurement stays well below the u-level errors it reports.
void residual_and_magnitude(const DenseMatrix& z, const DenseMatrix& q, const DenseMatrix& r,
                            DenseMatrix* residual, DenseMatrix* magnitude) {
  const std::size_t m = z.rows(), n = z.cols(), k = q.cols();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      long double acc = z(i, j), mag = 0.0L;
      for (std::size_t l = 0; l < k; ++l) {
        const long double p = static_cast<long double>(q(i, l)) * r(l, j);
        acc -= p;
        mag += std::abs(p);
      }
      if (residual) (*residual)(i, j) = static_cast<double>(acc);
      if (magnitude) (*magnitude)(i, j) = static_cast<double>(mag);
    }
}

}  // namespace

double componentwise_ratio(const DenseMatrix& z, const DenseMatrix& q, const DenseMatrix& r) {
  DenseMatrix residual(z.rows(), z.cols()), magnitude(z.rows(), z.cols());
  residual_and_magnitude(z, q, r, &residual, &magnitude);
  const double guard = u * max_abs(z);
  double worst = 0.0;
  for (std::size_t j = 0; j < z.cols(); ++j)
    for (std::size_t i = 0; i < z.rows(); ++i) {
      const double den = magnitude(i, j) + std::abs(z(i, j));
      if (den < guard || den == 0.0) continue;
      worst = std::max(worst, std::abs(residual(i, j)) / den);
    }
  return worst;
}

ErrorReport measure_errors(const InnerProduct& a, const DenseMatrix& z,
                           const FactorizationOutcome& outcome) {
  ErrorReport rep;
  if (!outcome) {
    rep.orth_error = rep.repr_2norm = rep.repr_anorm = rep.repr_componentwise = kNaN;
    rep.breakdown = outcome.breakdown().stage;
    return rep;
  }
  const QrFactors& f = outcome.factors();
  DenseMatrix gram = matmul_tn(f.q, ip_apply(a, f.q));
  for (std::size_t k = 0; k < gram.rows(); ++k) gram(k, k) -= 1.0;
  rep.orth_error = kernels::two_norm(gram);

  DenseMatrix residual(z.rows(), z.cols());
  residual_and_magnitude(z, f.q, f.r, &residual, nullptr);
  rep.repr_2norm = kernels::two_norm(residual) / kernels::two_norm(z);
  if (a.kind() == InnerProduct::Kind::Identity) {
    rep.repr_anorm = rep.repr_2norm;
  } else {
    const DenseMatrix a_half = sqrt_inner_product(a);
    rep.repr_anorm = kernels::two_norm(matmul(a_half, residual)) / kernels::two_norm(matmul(a_half, z));
  }
  rep.repr_componentwise = componentwise_ratio(z, f.q, f.r);
  return rep;
}

const NamedBound* BoundSet::find(std::string_view name) const {
  const auto it = std::find_if(bounds.begin(), bounds.end(), [&](const NamedBound& b) { return b.name == name; });
  return it == bounds.end() ? nullptr : &*it;
}

namespace {

struct BoundInfo {
  std::string_view name;
  ErrorField field;
  bool tight;
};

constexpr BoundInfo kBoundTable[] = {
    {"cholqr_repr_norm", ErrorField::Repr2Norm, false},
    {"cholqr_repr_componentwise", ErrorField::ReprComponentwise, true},
    {"cholqr_orth_detailed", ErrorField::Orthogonality, false},
    {"cholqr_orth_worstcase", ErrorField::Orthogonality, false},
    {"pre_cholqr_repr_norm", ErrorField::Repr2Norm, false},
    {"pre_cholqr_orth", ErrorField::Orthogonality, true},
    {"chol_eqr_repr_2norm", ErrorField::Repr2Norm, false},
    {"chol_eqr_repr_anorm", ErrorField::ReprANorm, true},
    {"chol_eqr_orth", ErrorField::Orthogonality, false},
    {"syev_repr", ErrorField::Repr2Norm, true},
    {"syev_repr_rozloznik", ErrorField::Repr2Norm, false},
    {"syev_orth", ErrorField::Orthogonality, false},
    {"gs_repr_norm", ErrorField::Repr2Norm, false},
    {"gs_repr_componentwise", ErrorField::ReprComponentwise, false},
    {"cgs_orth_improved", ErrorField::Orthogonality, true},
    {"cgs_orth_rozloznik", ErrorField::Orthogonality, false},
    {"mgs_orth", ErrorField::Orthogonality, false},
    {"cgs2_orth", ErrorField::Orthogonality, true},
    {"cgs2_repr", ErrorField::ReprANorm, true},
};

const BoundInfo& info(std::string_view name) {
  for (const BoundInfo& b : kBoundTable)
    if (b.name == name) return b;
  throw std::logic_error("unknown bound " + std::string(name));
}

}  // namespace

const std::vector<std::string>& all_bound_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const BoundInfo& b : kBoundTable) out.emplace_back(b.name);
    return out;
  }();
  return names;
}

std::optional<ErrorField> bound_field(std::string_view name) {
  for (const BoundInfo& b : kBoundTable)
    if (b.name == name) return b.field;
  return std::nullopt;
}

bool bound_is_tight(std::string_view name) {
  for (const BoundInfo& b : kBoundTable)
    if (b.name == name) return b.tight;
  return false;
}

BoundSet evaluate_bounds(Algorithm alg, const InnerProduct& a, const DenseMatrix& z,
                         const QrFactors& f, const ProblemSpectra& sp) {
  using kernels::two_norm;
  const double nq = two_norm(f.q);
  const double nr = two_norm(f.r);
  const double nz = two_norm(z);
  auto norm_r_inv = [&] { return two_norm(kernels::tri_inverse_upper(f.r)); };
  auto norm_z_a = [&] { return two_norm(matmul(sqrt_inner_product(a), z)); };
  auto diagnostic = [&](std::string_view key) {
    const auto v = f.diagnostic(key);
    if (!v) throw MissingDiagnostic("missing diagnostic " + std::string(key));
    return *v;
  };

  BoundSet out;
  auto add = [&](std::string_view name, double value) {
    const BoundInfo& b = info(name);
    out.bounds.push_back({std::string(name), b.field, value, b.tight});
  };
  const double orth_best = u * sp.norm_a * nq * nq;

  switch (alg) {
    case Algorithm::Cholqr: {
      const double nri = norm_r_inv();
      const double naz = two_norm(ip_apply(a, z));
      add("cholqr_repr_norm", u * nq * nr / nz);
      add("cholqr_repr_componentwise", u);
      add("cholqr_orth_detailed", u * nri * nz * (nri * naz + nq * sp.norm_a));
      add("cholqr_orth_worstcase", u * sp.kappa_z * sp.kappa_z * sp.kappa_a);
      break;
    }
    case Algorithm::PreCholqr: {
      const double nu = diagnostic(diag::kPreCholqrUNorm);
      const double ns = diagnostic(diag::kPreCholqrSNorm);
      add("pre_cholqr_repr_norm", u * nq * nu * ns / nz);
      add("pre_cholqr_orth", orth_best);
      break;
    }
    case Algorithm::CholEqr: {
      const double qr_abs = two_norm(matmul(abs(f.q), abs(f.r)));
      add("chol_eqr_repr_2norm", u * std::sqrt(sp.kappa_a) * nq * nr / nz);
      add("chol_eqr_repr_anorm", u * std::sqrt(sp.norm_a) * qr_abs / norm_z_a());
      add("chol_eqr_orth", orth_best);
      break;
    }
    case Algorithm::SyevEqr:
      add("syev_repr", u * sp.norm_a_inv_half * nr / nz);
      add("syev_repr_rozloznik", u * std::sqrt(sp.kappa_a));
      add("syev_orth", orth_best);
      break;
    case Algorithm::Cgs:
    case Algorithm::MgsCol:
    case Algorithm::MgsRow:
      add("gs_repr_norm", u * (nz + nq * nr) / nz);
      add("gs_repr_componentwise", u);
      if (alg == Algorithm::Cgs) {
        add("cgs_orth_improved",
            u * sp.norm_a * nz * nq * norm_r_inv() * sp.kappa_a_half_z);
        add("cgs_orth_rozloznik",
            u * std::sqrt(sp.norm_a) * nq * sp.kappa_a_half_z * std::sqrt(sp.kappa_a) * sp.kappa_z);
      } else {
        add("mgs_orth",
            u * sp.norm_a * nq * diagnostic(diag::kMgsNormRatio) * sp.kappa_a_half_z);
      }
      break;
    case Algorithm::Cgs2:
      add("cgs2_orth", orth_best);
      add("cgs2_repr", u * std::sqrt(sp.norm_a) * nq * nr / norm_z_a());
      break;
  }
  return out;
}

SingularValueDeviation singular_value_identities(const InnerProduct& a, const DenseMatrix& z,
                                                 const QrFactors& f) {
  const DenseMatrix a_half = sqrt_inner_product(a);
  const auto sigma_r = kernels::singular_values(f.r);
  const auto sigma_az = kernels::singular_values(matmul(a_half, z));
  SingularValueDeviation dev;
  for (std::size_t i = 0; i < sigma_r.size(); ++i)
    dev.max_rel_r = std::max(dev.max_rel_r, std::abs(sigma_r[i] - sigma_az[i]) / sigma_az[i]);

  const DenseMatrix zhat = kernels::householder_qr(z).q;
  const double sigma_n = kernels::singular_values(matmul(a_half, zhat)).back();
  dev.q_norm = std::abs(kernels::two_norm(f.q) * sigma_n - 1.0);
  return dev;
}

}  // namespace obqr::bounds

#include <algorithm>
#include <chrono>
#include <limits>
#include <ostream>

#include "obqr/harness.hpp"
#include "obqr/kernels.hpp"
#include "obqr/rng.hpp"

namespace obqr::harness {

std::string_view to_string(InnerKind kind) {
  return kind == InnerKind::Dense ? "dense" : "tridiag";
}

std::optional<InnerKind> parse_inner_kind(std::string_view name) {
  if (name == "dense") return InnerKind::Dense;
  if (name == "tridiag") return InnerKind::Tridiagonal;
  return std::nullopt;
}

std::size_t default_perf_m(InnerKind kind) {
  return kind == InnerKind::Dense ? 10000 : 100000;
}

double normalized_flops(InnerKind kind, std::size_t m, std::size_t n) {
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return kind == InnerKind::Dense ? 2.0 * md * md * nd + 2.0 * md * nd * nd : 2.0 * md * nd * nd;
}

InnerProduct perf_inner_product(InnerKind kind, std::size_t m, std::uint64_t seed) {
  if (kind == InnerKind::Tridiagonal)
    return InnerProduct::tridiagonal(std::vector<double>(m, 4.0), std::vector<double>(m - 1, -1.0));
  Rng rng = Rng::substream(seed, 4);
  DenseMatrix s(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    s(j, j) = static_cast<double>(m);
    for (std::size_t i = 0; i < j; ++i) s(i, j) = s(j, i) = rng.uniform();
  }
  return InnerProduct::dense(std::move(s));
}

std::vector<PerfRecord> run_perf(const PerfConfig& config, std::ostream* log) {
  using clock = std::chrono::steady_clock;
  const std::size_t m = config.m ? config.m : default_perf_m(config.inner);
  const InnerProduct a = perf_inner_product(config.inner, m, config.seed);
  // The norm-ratio diagnostic is not needed here and would cost MGS-row an
  // extra operator application per update.
  const MgsOptions mgs_options{.full_norm_ratio = false};

  std::vector<PerfRecord> out;
  for (std::size_t n : config.n_list) {
    Rng rng = Rng::substream(config.seed, 5);
    const DenseMatrix z = kernels::gaussian_matrix(m, n, rng);
    const double flops = normalized_flops(config.inner, m, n);
    for (Algorithm alg : config.algorithms) {
      PerfRecord rec{config.inner, m, n, alg, std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN()};
      if (alg == Algorithm::SyevEqr && m > kPerfSyevMaxM) {
        if (log)
          *log << "warning: skipping syev-eqr at m=" << m << " (dense eigensolve limited to m <= "
               << kPerfSyevMaxM << ")\n";
        out.push_back(rec);
        continue;
      }
      if (alg == Algorithm::CholEqr && config.inner == InnerKind::Dense && log)
        *log << "warning: chol-eqr with dense A costs O(m^3) at m=" << m << "\n";

      double best = std::numeric_limits<double>::infinity();
      for (int rep = 0; rep < config.reps; ++rep) {
        const auto start = clock::now();
        const auto outcome = factorize(alg, a, z, mgs_options);
        const double ns = std::chrono::duration<double, std::nano>(clock::now() - start).count();
        if (!outcome && log && rep == 0)
          *log << "warning: " << to_string(alg) << " broke down at n=" << n << ": "
               << outcome.breakdown().detail << "\n";
        best = std::min(best, ns);
      }
      rec.min_time_ns = best;
      rec.normalized_gflops = flops / best;
      out.push_back(rec);
    }
  }
  return out;
}

}  // namespace obqr::harness

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "obqr/bounds.hpp"
#include "obqr/oblique.hpp"
#include "obqr/testgen.hpp"

// Stability sweeps over constructed problems, performance runs, and the CSV
// both produce.
namespace obqr::harness {

struct SweepConfig {
  std::vector<int> cases = {1, 2, 3, 4, 5};
  std::size_t m = 80;
  std::size_t n = 10;
  double kappa_a_min = 10.0;
  double kappa_a_max = 1e15;
  int points = 15;
  testgen::KappaZRule kappa_z_rule = testgen::SqrtOfKappaA{};
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::uint64_t seed = 20240101;
  /// Concurrent sweep points; 0 means max_concurrency().
  unsigned threads = 0;
};

struct SweepRecord {
  int case_id = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  double kappa_a = 0.0;
  double kappa_z = 0.0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Cholqr;
  bounds::ErrorReport errors;
  /// Aligned with bounds::all_bound_names(); NaN where a bound does not apply.
  std::vector<double> bound_values;
  std::int64_t wall_time_ns = 0;

  bool breakdown() const noexcept { return errors.breakdown.has_value(); }
  /// NaN if `name` is unknown or does not apply to this row.
  double bound(std::string_view name) const;
};

/// OBLIQUE_QR_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned max_concurrency();

/// Exact spectra of a constructed instance, from its ground truth.
bounds::ProblemSpectra ground_truth_spectra(const testgen::TestInstance& inst);

/// One record per algorithm for a single instance.
std::vector<SweepRecord> evaluate_instance(const testgen::TestInstance& inst,
                                           const std::vector<Algorithm>& algorithms);

/// Every (case, point, algorithm) combination, ordered by case, then point,
/// then the order of `config.algorithms`, however many threads run.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

class InsufficientPoints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kSaturationCap = 1e-2;

/// Least-squares slope of log10(field) against log10(kappa_a) over the
/// non-breakdown rows of (algorithm, case) with 0 < error < saturation_cap.
/// Throws InsufficientPoints when fewer than three rows qualify.
double fit_slope(const std::vector<SweepRecord>& records, Algorithm alg, int case_id,
                 bounds::ErrorField field, double saturation_cap = kSaturationCap);

/// Median of log10(bound / error) over the non-breakdown rows of
/// (algorithm, case) where both are positive; nullopt if there are none.
std::optional<double> median_tightness(const std::vector<SweepRecord>& records, Algorithm alg,
                                       int case_id, std::string_view bound_name);

struct CheckViolation {
  std::size_t row = 0;
  std::string bound_name;
  double error = 0.0;
  double bound = 0.0;
};

/// Rows whose measured error exceeds `factor` times one of its bounds.
std::vector<CheckViolation> check_bounds(const std::vector<SweepRecord>& records,
                                         double factor = 1e4);

/// Median tightness of every tight bound per algorithm, pooled over cases.
void print_tightness_summary(std::ostream& os, const std::vector<SweepRecord>& records);

std::vector<std::string> sweep_csv_header();
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

enum class InnerKind { Dense, Tridiagonal };

std::string_view to_string(InnerKind kind);
std::optional<InnerKind> parse_inner_kind(std::string_view name);

/// Problem sizes above which syev-eqr is skipped in perf mode: its Jacobi
/// eigensolve of the full m x m operator is out of reach there.
inline constexpr std::size_t kPerfSyevMaxM = 2000;

struct PerfConfig {
  InnerKind inner = InnerKind::Tridiagonal;
  std::size_t m = 0;  ///< 0 picks default_perf_m(inner)
  std::vector<std::size_t> n_list = {4, 8, 16, 32, 64, 128, 256};
  int reps = 10;
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::uint64_t seed = 20240101;
};

std::size_t default_perf_m(InnerKind kind);

struct PerfRecord {
  InnerKind inner = InnerKind::Tridiagonal;
  std::size_t m = 0;
  std::size_t n = 0;
  Algorithm algorithm = Algorithm::Cholqr;
  double min_time_ns = 0.0;  ///< NaN when the algorithm was skipped
  double normalized_gflops = 0.0;
};

/// 2m^2n + 2mn^2 for dense A, 2mn^2 for tridiagonal A.
double normalized_flops(InnerKind kind, std::size_t m, std::size_t n);

/// Perf-mode operators: tridiagonal A = tridiag(-1, 4, -1); dense A has
/// diagonal m and symmetric off-diagonal entries uniform in [0, 1).
InnerProduct perf_inner_product(InnerKind kind, std::size_t m, std::uint64_t seed);

/// Runs sequentially; warnings (skipped or very expensive algorithms) go to
/// `log` when given.
std::vector<PerfRecord> run_perf(const PerfConfig& config, std::ostream* log = nullptr);

std::vector<std::string> perf_csv_header();
void write_perf_csv(std::ostream& os, const std::vector<PerfRecord>& records);

/// %.17g, with NaN written as "nan".
std::string format_double(double x);

/// Splits a line of the CSV this module writes (no quoting is ever needed).
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace obqr::harness

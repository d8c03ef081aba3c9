#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <thread>

#include "obqr/harness.hpp"

namespace obqr::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<double> median(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::size_t bound_index(std::string_view name) {
  const auto& names = bounds::all_bound_names();
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? names.size() : static_cast<std::size_t>(it - names.begin());
}

}  // namespace

double SweepRecord::bound(std::string_view name) const {
  const std::size_t k = bound_index(name);
  return k < bound_values.size() ? bound_values[k] : kNaN;
}

unsigned max_concurrency() {
  if (const char* env = std::getenv("OBLIQUE_QR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

bounds::ProblemSpectra ground_truth_spectra(const testgen::TestInstance& inst) {
  const auto& d = inst.a.eig()->values;
  bounds::ProblemSpectra s;
  s.norm_a = d.back();
  s.norm_a_inv_half = 1.0 / std::sqrt(d.front());
  s.kappa_a = inst.kappa_a;
  s.kappa_z = inst.kappa_z;
  s.kappa_a_half_z = inst.truth.kappa_a_half_z;
  return s;
}

std::vector<SweepRecord> evaluate_instance(const testgen::TestInstance& inst,
                                           const std::vector<Algorithm>& algorithms) {
  const auto spectra = ground_truth_spectra(inst);
  const auto& names = bounds::all_bound_names();
  std::vector<SweepRecord> out;
  for (Algorithm alg : algorithms) {
    SweepRecord rec;
    rec.case_id = inst.case_id;
    rec.m = inst.m;
    rec.n = inst.n;
    rec.kappa_a = inst.kappa_a;
    rec.kappa_z = inst.kappa_z;
    rec.seed = inst.seed;
    rec.algorithm = alg;
    rec.bound_values.assign(names.size(), kNaN);

    const auto start = std::chrono::steady_clock::now();
    const FactorizationOutcome outcome = factorize(alg, inst.a, inst.z);
    rec.wall_time_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();

    rec.errors = bounds::measure_errors(inst.a, inst.z, outcome);
    if (outcome) {
      for (const auto& b : bounds::evaluate_bounds(alg, inst.a, inst.z, outcome.factors(), spectra).bounds)
        rec.bound_values[bound_index(b.name)] = b.value;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  const auto plan = testgen::sweep_plan(config.kappa_a_min, config.kappa_a_max, config.points,
                                        config.kappa_z_rule);
  struct Job {
    int case_id;
    testgen::SweepPoint point;
  };
  std::vector<Job> jobs;
  for (int c : config.cases)
    for (const auto& p : plan) jobs.push_back({c, p});

  std::vector<std::vector<SweepRecord>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      try {
        const auto inst = testgen::build_instance(jobs[k].case_id, config.m, config.n,
                                                  jobs[k].point.kappa_a, jobs[k].point.kappa_z, config.seed);
        results[k] = evaluate_instance(inst, config.algorithms);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  const unsigned threads =
      std::min<std::size_t>(config.threads ? config.threads : max_concurrency(), jobs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<SweepRecord> out;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    std::move(results[k].begin(), results[k].end(), std::back_inserter(out));
  }
  return out;
}

double fit_slope(const std::vector<SweepRecord>& records, Algorithm alg, int case_id,
                 bounds::ErrorField field, double saturation_cap) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (r.algorithm != alg || r.case_id != case_id || r.breakdown()) continue;
    const double e = r.errors.value(field);
    if (!(e > 0.0) || !(e < saturation_cap)) continue;
    xs.push_back(std::log10(r.kappa_a));
    ys.push_back(std::log10(e));
  }
  if (xs.size() < 3)
    throw InsufficientPoints("fit_slope: " + std::to_string(xs.size()) + " qualifying points for " +
                             std::string(to_string(alg)) + " case " + std::to_string(case_id));
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  if (sxx == 0.0) throw InsufficientPoints("fit_slope: all qualifying points share one kappa_a");
  return sxy / sxx;
}

std::optional<double> median_tightness(const std::vector<SweepRecord>& records, Algorithm alg,
                                       int case_id, std::string_view bound_name) {
  const auto field = bounds::bound_field(bound_name);
  if (!field) return std::nullopt;
  std::vector<double> ratios;
  for (const auto& r : records) {
    if (r.algorithm != alg || r.case_id != case_id || r.breakdown()) continue;
    const double b = r.bound(bound_name);
    const double e = r.errors.value(*field);
    if (b > 0.0 && e > 0.0) ratios.push_back(std::log10(b / e));
  }
  return median(std::move(ratios));
}

std::vector<CheckViolation> check_bounds(const std::vector<SweepRecord>& records, double factor) {
  const auto& names = bounds::all_bound_names();
  std::vector<CheckViolation> out;
  for (std::size_t row = 0; row < records.size(); ++row) {
    const auto& r = records[row];
    if (r.breakdown()) continue;
    for (std::size_t k = 0; k < names.size(); ++k) {
      const double b = r.bound_values[k];
      if (std::isnan(b)) continue;
      const double e = r.errors.value(*bounds::bound_field(names[k]));
      if (e > factor * b) out.push_back({row, names[k], e, b});
    }
  }
  return out;
}

void print_tightness_summary(std::ostream& os, const std::vector<SweepRecord>& records) {
  std::map<std::pair<Algorithm, std::string>, std::vector<double>> pooled;
  for (const auto& r : records) {
    if (r.breakdown()) continue;
    for (const auto& name : bounds::all_bound_names()) {
      if (!bounds::bound_is_tight(name)) continue;
      const double b = r.bound(name);
      const double e = r.errors.value(*bounds::bound_field(name));
      if (b > 0.0 && e > 0.0) pooled[{r.algorithm, name}].push_back(std::log10(b / e));
    }
  }
  os << "median log10(bound/error), tight bounds:\n";
  for (const auto& [key, ratios] : pooled) {
    os << "  " << std::left << std::setw(12) << to_string(key.first) << std::setw(28) << key.second
       << std::fixed << std::setprecision(2) << *median(ratios) << "  (" << ratios.size() << " points)\n";
  }
  os.unsetf(std::ios::floatfield);
}

}  // namespace obqr::harness

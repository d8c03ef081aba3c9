#include <cmath>
#include <cstdio>
#include <ostream>

#include "obqr/harness.hpp"

namespace obqr::harness {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::vector<std::string> sweep_csv_header() {
  std::vector<std::string> h = {"case_id", "m", "n", "kappa_a", "kappa_z", "seed", "algorithm",
                                "orth_error", "repr_2norm", "repr_anorm", "repr_componentwise",
                                "breakdown_stage"};
  for (const auto& name : bounds::all_bound_names()) h.push_back(name);
  h.emplace_back("breakdown");
  h.emplace_back("wall_time_ns");
  return h;
}

namespace {

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) os << (k ? "," : "") << fields[k];
  os << '\n';
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  write_row(os, sweep_csv_header());
  for (const auto& r : records) {
    std::vector<std::string> f = {std::to_string(r.case_id),
                                  std::to_string(r.m),
                                  std::to_string(r.n),
                                  format_double(r.kappa_a),
                                  format_double(r.kappa_z),
                                  std::to_string(r.seed),
                                  std::string(to_string(r.algorithm)),
                                  format_double(r.errors.orth_error),
                                  format_double(r.errors.repr_2norm),
                                  format_double(r.errors.repr_anorm),
                                  format_double(r.errors.repr_componentwise),
                                  r.errors.breakdown ? std::string(to_string(*r.errors.breakdown)) : ""};
    for (double b : r.bound_values) f.push_back(format_double(b));
    f.push_back(r.breakdown() ? "1" : "0");
    f.push_back(std::to_string(r.wall_time_ns));
    write_row(os, f);
  }
}

std::vector<std::string> perf_csv_header() {
  return {"inner_kind", "m", "n", "algorithm", "min_time_ns", "normalized_gflops"};
}

void write_perf_csv(std::ostream& os, const std::vector<PerfRecord>& records) {
  write_row(os, perf_csv_header());
  for (const auto& r : records)
    write_row(os, {std::string(to_string(r.inner)), std::to_string(r.m), std::to_string(r.n),
                   std::string(to_string(r.algorithm)), format_double(r.min_time_ns),
                   format_double(r.normalized_gflops)});
}

}  // namespace obqr::harness

// oblique_qr: stability sweeps and performance runs for QR factorization in
// an oblique inner product, written as CSV.
//
//   oblique_qr stability [--case 3] [--algorithms cholqr,cgs] --out sweep.csv
//   oblique_qr perf --inner tridiag --m 20000 --n-list 8,32,128 --out perf.csv

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "obqr/harness.hpp"

namespace {

using namespace obqr;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

std::vector<Algorithm> parse_algorithms(const std::string& text) {
  if (text == "all") return {kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::vector<Algorithm> out;
  for (const auto& name : split(text)) {
    const auto alg = parse_algorithm(name);
    if (!alg) throw UsageError("unknown algorithm '" + name + "'");
    out.push_back(*alg);
  }
  return out;
}

std::vector<int> parse_cases(const std::string& text) {
  if (text == "all") return {1, 2, 3, 4, 5};
  int c = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), c);
  if (ec != std::errc{} || ptr != text.data() + text.size() || c < 1 || c > 5)
    throw UsageError("--case must be 1..5 or all, got '" + text + "'");
  return {c};
}

testgen::KappaZRule parse_kappa_z_rule(const std::string& text) {
  if (text == "sqrt") return testgen::SqrtOfKappaA{};
  if (text.rfind("fixed:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double v = std::stod(text.substr(6), &used);
      if (used == text.size() - 6) return testgen::FixedKappaZ{v};
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--kappa-z-rule must be sqrt or fixed:F, got '" + text + "'");
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text)) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size() || v == 0)
      throw UsageError("--n-list entries must be positive integers, got '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  return out;
}

struct StabilityFlags {
  std::string cases = "all";
  std::size_t m = 80;
  std::size_t n = 10;
  double kappa_a_min = 10.0;
  double kappa_a_max = 1e15;
  int points = 15;
  std::string kappa_z_rule = "sqrt";
  std::string algorithms = "all";
  std::uint64_t seed = harness::SweepConfig{}.seed;
  std::string out;
  bool check = false;
};

struct PerfFlags {
  std::string inner = "tridiag";
  std::size_t m = 0;
  std::string n_list = "4,8,16,32,64,128,256";
  int reps = 10;
  std::string algorithms = "all";
  std::uint64_t seed = harness::PerfConfig{}.seed;
  std::string out;
};

int run_stability(const StabilityFlags& f) {
  harness::SweepConfig config;
  config.cases = parse_cases(f.cases);
  config.m = f.m;
  config.n = f.n;
  config.kappa_a_min = f.kappa_a_min;
  config.kappa_a_max = f.kappa_a_max;
  config.points = f.points;
  config.kappa_z_rule = parse_kappa_z_rule(f.kappa_z_rule);
  config.algorithms = parse_algorithms(f.algorithms);
  config.seed = f.seed;
  if (config.n == 0 || config.n > config.m) throw UsageError("need 1 <= n <= m");
  // Validate the range before opening the output file.
  testgen::sweep_plan(config.kappa_a_min, config.kappa_a_max, config.points, config.kappa_z_rule);

  auto out = open_output(f.out);
  const auto records = harness::run_sweep(config);
  harness::write_sweep_csv(out, records);
  out.close();
  if (!out) throw std::ios_base::failure("error writing '" + f.out + "'");

  std::size_t breakdowns = 0;
  for (const auto& r : records) breakdowns += r.breakdown();
  std::cout << "wrote " << records.size() << " rows to " << f.out << " (" << breakdowns
            << " breakdowns)\n";
  harness::print_tightness_summary(std::cout, records);

  if (f.check) {
    const auto violations = harness::check_bounds(records);
    for (const auto& v : violations) {
      const auto& r = records[v.row];
      std::cerr << "check: case " << r.case_id << " kappa_a=" << harness::format_double(r.kappa_a) << " "
                << to_string(r.algorithm) << ": error " << v.error << " > 1e4 * " << v.bound_name << " ("
                << v.bound << ")\n";
    }
    if (!violations.empty()) return kExitCheckFailed;
    std::cout << "check: every error within 1e4 of its bounds\n";
  }
  return kExitOk;
}

int run_perf(const PerfFlags& f) {
  harness::PerfConfig config;
  const auto inner = harness::parse_inner_kind(f.inner);
  if (!inner) throw UsageError("--inner must be dense or tridiag, got '" + f.inner + "'");
  config.inner = *inner;
  config.m = f.m;
  config.n_list = parse_sizes(f.n_list);
  config.reps = f.reps;
  config.algorithms = parse_algorithms(f.algorithms);
  config.seed = f.seed;
  const std::size_t m = config.m ? config.m : harness::default_perf_m(config.inner);
  for (std::size_t n : config.n_list)
    if (n > m) throw UsageError("--n-list entries must not exceed m");

  auto out = open_output(f.out);
  const auto records = harness::run_perf(config, &std::cerr);
  harness::write_perf_csv(out, records);
  out.close();
  if (!out) throw std::ios_base::failure("error writing '" + f.out + "'");
  std::cout << "wrote " << records.size() << " rows to " << f.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QR factorization in an oblique inner product: stability sweeps and performance runs"};
  app.require_subcommand(1);

  StabilityFlags sf;
  auto* stability = app.add_subcommand("stability", "Condition-number sweep over constructed test problems");
  stability->add_option("--case", sf.cases, "Test case 1..5 or all")->capture_default_str();
  stability->add_option("--m", sf.m, "Rows of Z")->capture_default_str()->check(CLI::PositiveNumber);
  stability->add_option("--n", sf.n, "Columns of Z")->capture_default_str()->check(CLI::PositiveNumber);
  stability->add_option("--kappa-a-min", sf.kappa_a_min, "Smallest kappa(A)")->capture_default_str();
  stability->add_option("--kappa-a-max", sf.kappa_a_max, "Largest kappa(A)")->capture_default_str();
  stability->add_option("--points", sf.points, "Log-spaced kappa(A) values")->capture_default_str();
  stability->add_option("--kappa-z-rule", sf.kappa_z_rule, "sqrt or fixed:F")->capture_default_str();
  stability->add_option("--algorithms", sf.algorithms, "all or a comma list")->capture_default_str();
  stability->add_option("--seed", sf.seed, "Sweep seed")->capture_default_str();
  stability->add_option("--out", sf.out, "Output CSV path")->required();
  stability->add_flag("--check", sf.check, "Fail if any error exceeds 1e4 times its bound");

  PerfFlags pf;
  auto* perf = app.add_subcommand("perf", "Timing runs with FLOP-normalized rates");
  perf->add_option("--inner", pf.inner, "dense or tridiag")->capture_default_str();
  perf->add_option("--m", pf.m, "Rows of Z (default 10000 dense, 100000 tridiag)");
  perf->add_option("--n-list", pf.n_list, "Comma-separated column counts")->capture_default_str();
  perf->add_option("--reps", pf.reps, "Repetitions; the minimum time is kept")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  perf->add_option("--algorithms", pf.algorithms, "all or a comma list")->capture_default_str();
  perf->add_option("--seed", pf.seed, "Seed for A and Z")->capture_default_str();
  perf->add_option("--out", pf.out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (stability->parsed()) return run_stability(sf);
    return run_perf(pf);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

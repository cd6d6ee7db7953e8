#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "randcrit/randcrit.hpp"

using json = nlohmann::json;
using namespace randcrit;

namespace {

// Validation problems in the command line; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// "2..8", "16,36,64" or a mix such as "2..4,10".
std::vector<int> parse_range(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError(std::string(what) + ": cannot parse '" + s + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, dots)), hi = to_int(item.substr(dots + 2));
    if (hi < lo) throw UsageError(std::string(what) + ": empty range '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty range");
  return out;
}

struct Common {
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
};

class Sink {
 public:
  Sink(const Common& c, const std::string& command) {
    std::string path = c.out;
    const char* dir = std::getenv("RANDCRIT_OUTPUT_DIR");
    if (path.empty() && dir && *dir)
      path = "randcrit_" + command + (c.format == "csv" ? ".csv" : ".jsonl");
    if (!path.empty() && dir && *dir && std::filesystem::path(path).is_relative())
      path = (std::filesystem::path(dir) / path).string();
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_header(std::ostream& os, const std::string& format, const json& config, std::uint64_t seed) {
  if (format == "csv") {
    os << "# randcrit " << kVersion << "\n";
    os << "# config: " << config.dump() << "\n";
    os << "# seed: " << seed << "\n";
  } else {
    os << json{{"type", "header"}, {"version", kVersion}, {"config", config}, {"seed", seed}}.dump() << "\n";
  }
}

void write_row(std::ostream& os, const std::string& format, const std::vector<std::string>& cols,
               const std::vector<double>& vals, const char* type) {
  if (format == "csv") {
    for (std::size_t i = 0; i < vals.size(); ++i) os << (i ? "," : "") << num(vals[i]);
    os << "\n";
    return;
  }
  json j{{"type", type}};
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const double v = vals[i];
    if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 9e15) j[cols[i]] = static_cast<long long>(v);
    else j[cols[i]] = v;
  }
  os << j.dump() << "\n";
}

void write_columns(std::ostream& os, const std::string& format, const std::vector<std::string>& cols) {
  if (format != "csv") return;
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
}

void cmd_constants(const Common& c, const std::string& m_text, std::size_t samples, std::uint64_t seed) {
  const std::vector<int> ms = parse_range(m_text, "--m");
  for (int m : ms)
    if (m < 2) throw UsageError("--m: m must be >= 2 (got " + std::to_string(m) + ")");
  const json config{{"command", "constants"}, {"m", ms}, {"samples", samples}, {"seed", seed},
                    {"format", c.format}, {"threads", c.threads}};
  std::vector<ConstantsRow> rows;
  for (int m : ms) rows.push_back(constants_row(m, samples, seed + static_cast<std::uint64_t>(m), c.threads));

  Sink sink(c, "constants");
  std::ostream& os = sink.os();
  write_header(os, c.format, config, seed);
  const std::vector<std::string> cols = {"m",        "K_m",        "c_m",        "I_m_mc",        "I_m_mc_se",
                                         "I_m_mc_samples", "I_m_spectral", "C_m",    "log_C_over_half_m_log_m"};
  write_columns(os, c.format, cols);
  for (const auto& r : rows)
    write_row(os, c.format, cols,
              {double(r.m), r.K_m, r.c_m, r.I_m_mc.mean, r.I_m_mc.std_error, double(r.I_m_mc.n_samples),
               r.I_m_fyodorov, r.C_m, r.log_ratio},
              "row");
}

void cmd_wigner(const Common& c, const std::string& n_text) {
  const std::vector<int> ns = parse_range(n_text, "--n");
  for (int n : ns)
    if (n < 2) throw UsageError("--n: n must be >= 2 (got " + std::to_string(n) + ")");
  const json config{{"command", "wigner"}, {"n", ns}, {"format", c.format}};
  const double limit = std::numbers::sqrt2 / std::numbers::pi;
  std::vector<std::vector<double>> rows;
  for (int n : ns) {
    const double w = wigner_limit_integral(n);
    const double edge = std::sqrt(2.0 * n) + 10;
    const double mass =
        integrate_adaptive([n](double x) { return one_point(n, x).R_n; }, -edge, edge, 1e-11).value;
    rows.push_back({double(n), w, limit, w / limit - 1, rescaled_density(n, 0.0), mass, mass / n - 1});
  }
  Sink sink(c, "wigner");
  std::ostream& os = sink.os();
  write_header(os, c.format, config, 0);
  const std::vector<std::string> cols = {"n",           "wigner_integral", "limit",           "rel_error",
                                         "rho_bar_at_0", "integral_R_n",   "integral_rel_error"};
  write_columns(os, c.format, cols);
  for (const auto& r : rows) write_row(os, c.format, cols, r, "row");
}

void cmd_sphere(const Common& c, int n, int trials, std::uint64_t seed, int grid_res) {
  if (n < 1 || n > kMaxHarmonicDegree)
    throw UsageError("--n: degree must be in 1.." + std::to_string(kMaxHarmonicDegree));
  if (trials < 1) throw UsageError("--trials: need at least one trial");
  if (grid_res != 0 && grid_res < 4 * n)
    throw UsageError("--grid-res: must be at least 4n = " + std::to_string(4 * n));
  DetectorOptions opt;
  opt.grid_res = grid_res;
  const json config{{"command", "sphere"}, {"n", n},          {"trials", trials},
                    {"seed", seed},        {"grid_res", grid_res}, {"format", c.format}};
  const auto records = run_sphere_trials(n, trials, seed, opt, c.threads);
  const SphereSummary s = summarize_trials(n, records);

  Sink sink(c, "sphere");
  std::ostream& os = sink.os();
  write_header(os, c.format, config, seed);
  const std::vector<std::string> cols = {"trial", "degree", "total", "extrema", "saddles",
                                         "euler_check", "morse", "dropped_seeds"};
  write_columns(os, c.format, cols);
  for (const auto& r : records)
    write_row(os, c.format, cols,
              {double(r.trial), double(r.degree), double(r.total), double(r.extrema), double(r.saddles),
               double(r.euler_check), double(r.morse), double(r.dropped_seeds)},
              "trial");

  json summary{{"type", "summary"},       {"n", s.n},
               {"trials", s.trials},      {"morse_trials", s.morse_trials},
               {"euler_failures", s.euler_failures}, {"mean_count", s.mean_count},
               {"count_std_error", s.count_std_error}};
  summary["predicted"] = std::isnan(s.predicted) ? json(nullptr) : json(s.predicted);
  json zonal;
  if (n >= 2) {
    const ZonalBoundReport z = zonal_bound_report(n, records);
    zonal = {{"type", "zonal"},
             {"n", z.n},
             {"trials", z.trials},
             {"mean_extrema_ratio", z.mean_extrema_ratio},
             {"std_error", z.std_error},
             {"reference_bound", z.reference_bound},
             {"bessel_bound", z.bessel_bound}};
  }
  if (c.format == "csv") {
    os << "# summary: n=" << s.n << " trials=" << s.trials << " morse_trials=" << s.morse_trials
       << " euler_failures=" << s.euler_failures << " mean_count=" << num(s.mean_count)
       << " count_std_error=" << num(s.count_std_error) << " predicted=" << num(s.predicted) << "\n";
    if (!zonal.is_null())
      os << "# zonal: mean_extrema_ratio=" << num(zonal["mean_extrema_ratio"].get<double>())
         << " std_error=" << num(zonal["std_error"].get<double>())
         << " reference_bound=" << num(zonal["reference_bound"].get<double>())
         << " bessel_bound=" << num(zonal["bessel_bound"].get<double>()) << "\n";
  } else {
    os << summary.dump() << "\n";
    if (!zonal.is_null()) os << zonal.dump() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected critical point constants of random functions"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", common.out,
                 "output file (default: stdout, or a file under $RANDCRIT_OUTPUT_DIR when set)");
  app.add_option("--threads", common.threads, "worker threads (0 = all cores)");

  std::string m_text;
  std::size_t samples = 0;
  std::uint64_t seed = 42;
  auto* constants = app.add_subcommand("constants", "K_m, c_m, I_m by both routes and C(m)");
  constants->add_option("--m", m_text, "values of m, e.g. 2..8 or 2,4,8")->required();
  constants->add_option("--samples", samples, "Monte Carlo samples per m (0 = size-dependent default)");
  constants->add_option("--seed", seed, "base seed");

  std::string n_text;
  auto* wigner = app.add_subcommand("wigner", "GOE one-point function against the semicircle limit");
  wigner->add_option("--n", n_text, "matrix sizes, e.g. 16,36,64,100")->required();

  int degree = 0, trials = 200, grid_res = 0;
  std::uint64_t sphere_seed = 42;
  auto* sphere = app.add_subcommand("sphere", "critical points of random spherical harmonics");
  sphere->add_option("--n", degree, "harmonic degree")->required();
  sphere->add_option("--trials", trials, "number of sampled harmonics");
  sphere->add_option("--seed", sphere_seed, "base seed");
  sphere->add_option("--grid-res", grid_res, "latitude bands of the seeding grid (0 = max(8, 4n))");

  for (auto* sub : {constants, wigner, sphere}) {
    sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", common.out, "output file");
    sub->add_option("--threads", common.threads, "worker threads (0 = all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*constants) cmd_constants(common, m_text, samples, seed);
    if (*wigner) cmd_wigner(common, n_text);
    if (*sphere) cmd_sphere(common, degree, trials, sphere_seed, grid_res);
  } catch (const UsageError& e) {
    std::cerr << "randcrit: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {  // InputError, ParameterError
    std::cerr << "randcrit: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "randcrit: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "randcrit: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

#include "latdisc/cli.hpp"

#include "latdisc/discrimination.hpp"
#include "latdisc/optimizer.hpp"
#include "latdisc/simulator.hpp"
#include "latdisc/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace latdisc::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct GlobalOptions {
  std::string format = "csv";
  std::string output;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::optional<std::uint64_t> seed;
  bool degrees = false;

  Format fmt() const { return format == "json" ? Format::json : Format::csv; }
  double angle(double v) const { return degrees ? v * kPi / 180.0 : v; }
};

double check_theta(double theta, const char* flag) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) {
    throw UsageError(std::string(flag) + " must lie in [0, pi] radians (got " + format_number(theta) + ")");
  }
  return theta;
}

double check_eta1(double eta1, const char* flag) {
  if (!std::isfinite(eta1) || eta1 < 0.0 || eta1 > 1.0) {
    throw UsageError(std::string(flag) + " must lie in [0, 1] (got " + format_number(eta1) + ")");
  }
  return eta1;
}

// Value as it will be printed, so JSON and CSV carry identical numbers.
ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v).c_str(), nullptr);
}

std::string utc_timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<std::uint64_t> seed;

  ordered_json to_json() const {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    ordered_json j{{"command", command},
                   {"parameters", params},
                   {"artifact_version", kArtifactVersion},
                   {"timestamp", utc_timestamp()}};
    j["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
    return j;
  }
};

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<ordered_json> row) { rows_.push_back(std::move(row)); }

  std::string csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "");
        const auto& cell = row[i];
        if (cell.is_string()) {
          os << cell.get<std::string>();
        } else if (cell.is_number_float()) {
          os << format_number(cell.get<double>());
        } else if (cell.is_null()) {
          os << "nan";
        } else {
          os << cell.dump();
        }
      }
      os << '\n';
    }
    return os.str();
  }

  ordered_json row_json(std::size_t r) const {
    ordered_json j = ordered_json::object();
    for (std::size_t i = 0; i < columns_.size(); ++i) j[columns_[i]] = rows_[r][i];
    return j;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<ordered_json>> rows_;
};

void emit(const GlobalOptions& g, const std::string& body, const Manifest& manifest, std::ostream& out) {
  if (g.output.empty()) {
    out << body;
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + g.output);
  file << body;
  if (g.fmt() == Format::csv) {
    std::ofstream side(g.output + ".manifest.json", std::ios::binary);
    if (!side) throw std::runtime_error("cannot open manifest file " + g.output + ".manifest.json");
    side << manifest.to_json().dump(2) << '\n';
  }
}

// Single-row commands are flat objects; multi-row commands list rows.
std::string render(const GlobalOptions& g, const Table& table, const Manifest& manifest, bool flat,
                   const ordered_json& extra = ordered_json::object()) {
  if (g.fmt() == Format::csv) return table.csv();
  ordered_json j = ordered_json::object();
  if (flat && table.size() == 1) {
    j = table.row_json(0);
  } else {
    j["rows"] = ordered_json::array();
    for (std::size_t r = 0; r < table.size(); ++r) j["rows"].push_back(table.row_json(r));
  }
  for (const auto& [k, v] : extra.items()) j[k] = v;
  j["manifest"] = manifest.to_json();
  return j.dump(2) + "\n";
}

std::vector<ordered_json> optimum_row(double theta, double eta1) {
  const Priors priors(eta1);
  const auto opt = analytic_subspace_optimum(priors);
  return {json_number(theta),
          json_number(eta1),
          std::string(to_string(opt.regime)),
          json_number(opt.alpha),
          json_number(opt.beta),
          json_number(optimal_average_probability(theta, priors))};
}

// --- optimal ---------------------------------------------------------------

struct OptimalArgs {
  double theta = 0.0;
  double eta1 = 0.5;
};

int cmd_optimal(const GlobalOptions& g, const OptimalArgs& a, std::ostream& out) {
  const double theta = check_theta(g.angle(a.theta), "--theta");
  const double eta1 = check_eta1(a.eta1, "--eta1");
  Table table({"theta", "eta1", "regime", "c1", "c2", "p_opt", "pure_coefficient"});
  auto row = optimum_row(theta, eta1);
  row.push_back(json_number(pure_state_coefficient(Priors(eta1))));
  table.add(std::move(row));
  const Manifest manifest{"optimal", {{"theta", format_number(theta)}, {"eta1", format_number(eta1)}}, g.seed};
  emit(g, render(g, table, manifest, true), manifest, out);
  return kExitOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string variable;
  double fixed = 0.0;
  int points = 101;
  std::optional<double> from;
  std::optional<double> to;
};

int cmd_sweep(const GlobalOptions& g, const SweepArgs& a, std::ostream& out) {
  if (a.points < 2) throw UsageError("--points must be >= 2 (got " + std::to_string(a.points) + ")");
  const bool over_theta = a.variable == "theta";
  double lo = 0.0;
  double hi = over_theta ? kPi : 1.0;
  if (a.from) lo = over_theta ? g.angle(*a.from) : *a.from;
  if (a.to) hi = over_theta ? g.angle(*a.to) : *a.to;
  double fixed = 0.0;
  if (over_theta) {
    check_theta(lo, "--from");
    check_theta(hi, "--to");
    fixed = check_eta1(a.fixed, "--fixed");
  } else {
    check_eta1(lo, "--from");
    check_eta1(hi, "--to");
    fixed = check_theta(g.angle(a.fixed), "--fixed");
  }
  if (lo > hi) throw UsageError("--from must not exceed --to");

  Table table({"theta", "eta1", "regime", "c1", "c2", "p_opt"});
  for (int i = 0; i < a.points; ++i) {
    const double x = i + 1 == a.points ? hi : lo + (hi - lo) * static_cast<double>(i) / (a.points - 1);
    table.add(over_theta ? optimum_row(x, fixed) : optimum_row(fixed, x));
  }
  const Manifest manifest{"sweep",
                          {{"variable", a.variable},
                           {"fixed", format_number(fixed)},
                           {"points", std::to_string(a.points)},
                           {"from", format_number(lo)},
                           {"to", format_number(hi)}},
                          g.seed};
  emit(g, render(g, table, manifest, false), manifest, out);
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  int resolution = kDefaultGridResolution;
  int eta_samples = 101;
  int quadrature_nodes = kDefaultQuadratureNodes;
  bool inject_fault = false;
};

int cmd_verify(const GlobalOptions& g, const VerifyArgs& a, std::ostream& out) {
  if (a.resolution < 100) throw UsageError("--resolution must be >= 100");
  if (a.eta_samples < 1) throw UsageError("--eta-samples must be >= 1");
  if (a.quadrature_nodes < 4) throw UsageError("--quadrature-nodes must be >= 4");
  VerifyOptions opts;
  opts.resolution = a.resolution;
  opts.eta_samples = a.eta_samples;
  opts.quadrature_nodes = a.quadrature_nodes;
  opts.threads = g.threads;
  opts.inject_e0_fault = a.inject_fault;
  const auto checks = run_verification(opts);

  Table table({"check", "max_deviation", "tolerance", "status"});
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    table.add({c.name, json_number(c.max_deviation), json_number(c.tolerance), c.passed ? "PASS" : "FAIL"});
  }
  const Manifest manifest{"verify",
                          {{"resolution", std::to_string(a.resolution)},
                           {"eta_samples", std::to_string(a.eta_samples)},
                           {"quadrature_nodes", std::to_string(a.quadrature_nodes)},
                           {"inject_fault", a.inject_fault ? "true" : "false"}},
                          g.seed};
  emit(g, render(g, table, manifest, false, {{"passed", all}}), manifest, out);
  return all ? kExitOk : kExitFailure;
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  double theta = kPi / 2.0;
  double eta1 = 0.5;
  std::int64_t trials = 1'000'000;
  std::string phase_mode = "uniform";
  double phi1 = 0.0;
  double phi2 = 0.0;
};

int cmd_simulate(const GlobalOptions& g, const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.trials < 1) throw UsageError("--trials must be >= 1 (got " + std::to_string(a.trials) + ")");
  SimConfig cfg;
  cfg.theta = check_theta(g.angle(a.theta), "--theta");
  cfg.eta1 = check_eta1(a.eta1, "--eta1");
  cfg.trials = static_cast<std::uint64_t>(a.trials);
  cfg.seed = g.seed.value_or(0);
  cfg.threads = g.threads;
  if (a.phase_mode == "fixed") {
    const double phi1 = g.angle(a.phi1);
    const double phi2 = g.angle(a.phi2);
    if (!std::isfinite(phi1)) throw UsageError("--phi1 must be finite");
    if (!std::isfinite(phi2)) throw UsageError("--phi2 must be finite");
    cfg.phase_mode = FixedPhases{phi1, phi2};
  }
  const SimReport r = run_simulation(cfg);

  Table table({"theta", "eta1", "phase_mode", "trials", "seed", "n_correct_1", "n_correct_2", "n_wrong",
               "n_inconclusive", "empirical_success", "predicted_success", "z_score", "rng"});
  table.add({json_number(cfg.theta), json_number(cfg.eta1), a.phase_mode, cfg.trials, cfg.seed, r.counts.correct_1,
             r.counts.correct_2, r.counts.wrong, r.counts.inconclusive, json_number(r.empirical_success),
             json_number(r.predicted_success), json_number(r.z_score), std::string(r.rng)});
  std::vector<std::pair<std::string, std::string>> params{{"theta", format_number(cfg.theta)},
                                                          {"eta1", format_number(cfg.eta1)},
                                                          {"trials", std::to_string(cfg.trials)},
                                                          {"phase_mode", a.phase_mode}};
  if (a.phase_mode == "fixed") {
    params.emplace_back("phi1", format_number(std::get<FixedPhases>(cfg.phase_mode).phi1));
    params.emplace_back("phi2", format_number(std::get<FixedPhases>(cfg.phase_mode).phi2));
  }
  params.emplace_back("rng", std::string(r.rng));
  const Manifest manifest{"simulate", std::move(params), cfg.seed};
  emit(g, render(g, table, manifest, true), manifest, out);

  if (std::isnan(r.z_score) || std::abs(r.z_score) > 4.0) {
    err << "warning: |z_score| = " << format_number(r.z_score) << " exceeds 4\n";
  }
  if (r.counts.wrong > 0) {
    err << "error: " << r.counts.wrong << " misidentified trials; the measurement is not unambiguous\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal programmable unambiguous discriminator for latitudinal qubit states"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", g.output, "Output file (default stdout)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "RNG seed (u64)");
  app.add_flag("--degrees", g.degrees, "Read angle flags in degrees");

  OptimalArgs optimal;
  auto* optimal_cmd = app.add_subcommand("optimal", "Optimal measurement and success probability");
  optimal_cmd->add_option("--theta", optimal.theta, "Polar angle")->required();
  optimal_cmd->add_option("--eta1", optimal.eta1, "Prior of the first state")->required();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate the optimum over theta or eta1");
  sweep_cmd->add_option("--variable", sweep.variable, "Swept variable")
      ->required()
      ->check(CLI::IsMember({"theta", "eta1"}));
  sweep_cmd->add_option("--fixed", sweep.fixed, "Value of the other variable")->required();
  sweep_cmd->add_option("--points", sweep.points, "Number of samples (>= 2)");
  sweep_cmd->add_option("--from", sweep.from, "Start of the swept range");
  sweep_cmd->add_option("--to", sweep.to, "End of the swept range");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle checks");
  verify_cmd->add_option("--resolution", verify.resolution, "Alpha grid points for the optimum search");
  verify_cmd->add_option("--eta-samples", verify.eta_samples, "Prior samples in the sweep");
  verify_cmd->add_option("--quadrature-nodes", verify.quadrature_nodes, "Phase nodes per angle");
  verify_cmd->add_flag("--inject-fault", verify.inject_fault)->group("");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo of the optimal discriminator");
  sim_cmd->add_option("--theta", sim.theta, "Polar angle");
  sim_cmd->add_option("--eta1", sim.eta1, "Prior of the first state");
  sim_cmd->add_option("--trials", sim.trials, "Number of trials");
  sim_cmd->add_option("--phase-mode", sim.phase_mode, "uniform or fixed")->check(CLI::IsMember({"uniform", "fixed"}));
  sim_cmd->add_option("--phi1", sim.phi1, "Phase of the first state (fixed mode)");
  sim_cmd->add_option("--phi2", sim.phi2, "Phase of the second state (fixed mode)");

  for (auto* sub : {optimal_cmd, sweep_cmd, verify_cmd, sim_cmd}) sub->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*optimal_cmd) return cmd_optimal(g, optimal, out);
    if (*sweep_cmd) return cmd_sweep(g, sweep, out);
    if (*verify_cmd) return cmd_verify(g, verify, out);
    if (*sim_cmd) return cmd_simulate(g, sim, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace latdisc::cli

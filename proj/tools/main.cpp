// heavytail: simulation and verification lab for extreme eigenvalues of
// heavy-tailed sample covariance matrices.
//
// Subcommands: simulate, eigen, verify, garch-alpha, b-estimate, hill.
// Exit codes: 0 pass, 1 runtime failure, 2 usage/config error,
// 3 statistical tolerance failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "heavytail/errors.hpp"
#include "heavytail/garch_tail.hpp"
#include "heavytail/limits.hpp"
#include "heavytail/processes.hpp"
#include "heavytail/spectra.hpp"
#include "heavytail/stats.hpp"
#include "heavytail/tail.hpp"
#include "heavytail/verify.hpp"
#include "heavytail/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace heavytail;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Flat key-value configuration. Keys mirror the experiment schema, dotted
// for nesting (e.g. process.garch.a). Flags override file values.

const std::vector<std::string> kKnownKeys = {
    "process.variant",     "process.burn_in",
    "process.iid.alpha",   "process.iid.q",
    "process.iid.scale",   "process.sv.z.alpha",
    "process.sv.z.q",      "process.sv.z.scale",
    "process.sv.vol.variant", "process.sv.vol.m",
    "process.sv.vol.mu",   "process.sv.vol.tau",
    "process.sv.vol.psi",  "process.sv.vol.xi_std",
    "process.garch.a0",    "process.garch.a",
    "process.garch.b",     "alpha",
    "n",                   "p",
    "k",                   "reps",
    "seed",                "growth.kind",
    "growth.beta",         "growth.kappa",
    "growth.p",            "x_grid",
    "b_reps",              "calibration_draws",
    "tol.ks_largest",      "tol.ks_spacing",
    "tol.ratio_lo",        "tol.ratio_hi",
    "checks.ks_largest",   "checks.ks_spacing",
    "checks.ratio_max_entry"};

struct KeyValues {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }

  void set(const std::string& key, const std::string& value) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) ==
        kKnownKeys.end())
      throw ParameterError("unknown config key: " + key);
    values[key] = value;
  }

  const std::string& get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end())
      throw ParameterError("missing config key: " + key);
    return it->second;
  }

  double get_double(const std::string& key) const {
    try {
      std::size_t pos = 0;
      const double v = std::stod(get(key), &pos);
      if (pos != get(key).size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const ParameterError&) {
      throw;
    } catch (const std::exception&) {
      throw ParameterError("config key " + key + " is not a number: '" +
                           get(key) + "'");
    }
  }

  std::uint64_t get_u64(const std::string& key) const {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(get(key), &pos);
      if (pos != get(key).size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const ParameterError&) {
      throw;
    } catch (const std::exception&) {
      throw ParameterError("config key " + key +
                           " is not a nonnegative integer: '" + get(key) +
                           "'");
    }
  }

  bool get_bool(const std::string& key) const {
    const std::string& s = get(key);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ParameterError("config key " + key + " is not a boolean: '" + s +
                         "'");
  }

  std::vector<double> get_doubles(const std::string& key) const {
    std::vector<double> out;
    std::istringstream in(get(key));
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ParameterError("config key " + key + " has a bad list entry: '" +
                             item + "'");
      }
    }
    if (out.empty())
      throw ParameterError("config key " + key + " is an empty list");
    return out;
  }
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

KeyValues parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file: " + path);
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError(path + ":" + std::to_string(lineno) +
                           ": expected key = value");
    kv.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

// ---------------------------------------------------------------------------
// Domain objects from resolved key-values.

ProcessSpec process_from(const KeyValues& kv) {
  const std::string variant = kv.get("process.variant");
  ProcessSpec spec = [&] {
    if (variant == "iid") {
      TailLaw law{kv.get_double("process.iid.alpha"),
                  kv.has("process.iid.q") ? kv.get_double("process.iid.q")
                                          : 1.0,
                  kv.has("process.iid.scale")
                      ? kv.get_double("process.iid.scale")
                      : 1.0};
      return ProcessSpec::iid(law);
    }
    if (variant == "sv") {
      TailLaw z{kv.get_double("process.sv.z.alpha"),
                kv.has("process.sv.z.q") ? kv.get_double("process.sv.z.q")
                                         : 1.0,
                kv.has("process.sv.z.scale")
                    ? kv.get_double("process.sv.z.scale")
                    : 1.0};
      const std::string vol = kv.has("process.sv.vol.variant")
                                  ? kv.get("process.sv.vol.variant")
                                  : "exp_gaussian";
      if (vol == "m_dependent") {
        MDependentVol md;
        md.m = kv.has("process.sv.vol.m")
                   ? static_cast<std::size_t>(kv.get_u64("process.sv.vol.m"))
                   : 1;
        md.mu = kv.has("process.sv.vol.mu")
                    ? kv.get_double("process.sv.vol.mu")
                    : 0.0;
        md.tau = kv.has("process.sv.vol.tau")
                     ? kv.get_double("process.sv.vol.tau")
                     : 0.5;
        return ProcessSpec::sv(z, md);
      }
      if (vol == "exp_gaussian") {
        ExpGaussianVol eg;
        eg.psi = kv.has("process.sv.vol.psi")
                     ? kv.get_doubles("process.sv.vol.psi")
                     : std::vector<double>{1.0};
        eg.xi_std = kv.has("process.sv.vol.xi_std")
                        ? kv.get_double("process.sv.vol.xi_std")
                        : 1.0;
        return ProcessSpec::sv(z, eg);
      }
      throw ParameterError("unknown volatility variant: " + vol);
    }
    if (variant == "garch") {
      GarchSpec g;
      g.a0 = kv.get_double("process.garch.a0");
      if (kv.has("process.garch.a")) g.a = kv.get_doubles("process.garch.a");
      if (kv.has("process.garch.b")) g.b = kv.get_doubles("process.garch.b");
      return ProcessSpec::garch(g);
    }
    throw ParameterError("unknown process variant: " + variant);
  }();
  if (kv.has("process.burn_in"))
    spec.burn_in = static_cast<std::size_t>(kv.get_u64("process.burn_in"));
  spec.validate();
  return spec;
}

GrowthRule growth_from(const KeyValues& kv) {
  const std::string kind =
      kv.has("growth.kind") ? kv.get("growth.kind") : "explicit";
  if (kind == "beta") return GrowthBeta{kv.get_double("growth.beta")};
  if (kind == "kappa") return GrowthKappa{kv.get_double("growth.kappa")};
  if (kind == "explicit") {
    const std::string key = kv.has("growth.p") ? "growth.p" : "p";
    return GrowthExplicit{static_cast<std::size_t>(kv.get_u64(key))};
  }
  throw ParameterError("unknown growth kind: " + kind);
}

// Tail index for normalization: explicit `alpha` key, else the law alpha for
// iid/sv rows. GARCH rows need it explicitly (solve it with garch-alpha).
double alpha_from(const KeyValues& kv, const ProcessSpec& spec) {
  if (kv.has("alpha")) return kv.get_double("alpha");
  if (const auto* iid = std::get_if<IidProcess>(&spec.variant))
    return iid->law.alpha;
  if (const auto* sv = std::get_if<SvProcess>(&spec.variant))
    return sv->z_law.alpha;
  throw ParameterError(
      "alpha is required for garch rows (estimate it with garch-alpha or "
      "hill)");
}

ExperimentConfig experiment_from(const KeyValues& kv) {
  ExperimentConfig cfg;
  cfg.process = process_from(kv);
  cfg.alpha = alpha_from(kv, cfg.process);
  cfg.n = static_cast<std::size_t>(kv.get_u64("n"));
  cfg.growth = growth_from(kv);
  if (kv.has("k")) cfg.k = static_cast<std::size_t>(kv.get_u64("k"));
  cfg.reps = static_cast<std::size_t>(kv.get_u64("reps"));
  if (kv.has("seed")) cfg.seed = kv.get_u64("seed");
  if (kv.has("x_grid")) cfg.x_grid = kv.get_doubles("x_grid");
  if (kv.has("b_reps"))
    cfg.b_reps = static_cast<std::size_t>(kv.get_u64("b_reps"));
  if (kv.has("calibration_draws"))
    cfg.calibration_draws =
        static_cast<std::size_t>(kv.get_u64("calibration_draws"));
  if (kv.has("tol.ks_largest"))
    cfg.tol.ks_largest = kv.get_double("tol.ks_largest");
  if (kv.has("tol.ks_spacing"))
    cfg.tol.ks_spacing = kv.get_double("tol.ks_spacing");
  if (kv.has("tol.ratio_lo")) cfg.tol.ratio_lo = kv.get_double("tol.ratio_lo");
  if (kv.has("tol.ratio_hi")) cfg.tol.ratio_hi = kv.get_double("tol.ratio_hi");
  if (kv.has("checks.ks_largest"))
    cfg.checks.ks_largest = kv.get_bool("checks.ks_largest");
  if (kv.has("checks.ks_spacing"))
    cfg.checks.ks_spacing = kv.get_bool("checks.ks_spacing");
  if (kv.has("checks.ratio_max_entry"))
    cfg.checks.ratio_max_entry = kv.get_bool("checks.ratio_max_entry");
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// Deterministic file output.

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    out_ << header << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ",";
      out_ << cells[i];
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

void write_manifest(const fs::path& dir, const std::string& command,
                    const KeyValues& kv,
                    const std::vector<std::string>& outputs,
                    const std::map<std::string, double>& timing,
                    const json& details = json::object()) {
  json m;
  m["tool_version"] = kVersion;
  m["command"] = command;
  m["seed"] = kv.has("seed") ? kv.get_u64("seed") : 0;
  json echo;
  for (const auto& [key, value] : kv.values) echo[key] = value;
  m["config_echo"] = echo;
  json t;
  for (const auto& [phase, s] : timing) t[phase] = s;
  m["timing_seconds"] = t;
  m["outputs"] = outputs;
  if (!details.empty()) m["details"] = details;
  std::ofstream out(dir / "manifest.json");
  out << m.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Flag plumbing: every flag lands in the key-value map so that the manifest
// echo alone reproduces the run.

struct CommonFlags {
  std::optional<std::string> config;
  std::vector<std::string> sets;
  std::optional<std::string> process;
  std::optional<double> alpha, q, scale;
  std::optional<std::string> vol;
  std::optional<std::uint64_t> m;
  std::optional<double> mu, tau, xi_std;
  std::optional<std::string> psi, a_list, b_list;
  std::optional<double> a0, a1, b1;
  std::optional<std::uint64_t> burn_in, n, p, k, reps, seed, b_reps;
  std::optional<std::string> x_grid;
  std::optional<std::string> growth;
  std::optional<double> beta, kappa;
  std::string out_dir = ".";
};

void add_common_flags(CLI::App* sub, CommonFlags* f, bool with_experiment) {
  sub->add_option("--config", f->config, "flat key=value config file");
  sub->add_option("--set", f->sets,
                  "override any config key, e.g. --set process.garch.a1=0.1");
  sub->add_option("--process", f->process, "iid | sv | garch");
  sub->add_option("--alpha", f->alpha, "tail index");
  sub->add_option("--q", f->q, "positive-tail balance");
  sub->add_option("--scale", f->scale, "Pareto scale");
  sub->add_option("--vol", f->vol, "m-dependent | exp-gaussian");
  sub->add_option("--m", f->m, "m-dependent window lag count");
  sub->add_option("--mu", f->mu, "lognormal mu");
  sub->add_option("--tau", f->tau, "lognormal tau");
  sub->add_option("--psi", f->psi, "comma list of linear filter weights");
  sub->add_option("--xi-std", f->xi_std, "gaussian noise std of log sigma");
  sub->add_option("--a0", f->a0, "GARCH alpha_0");
  sub->add_option("--a1", f->a1, "GARCH alpha_1 (shorthand for --a)");
  sub->add_option("--b1", f->b1, "GARCH beta_1 (shorthand for --b)");
  sub->add_option("--a", f->a_list, "comma list of GARCH alpha_1..alpha_p");
  sub->add_option("--b", f->b_list, "comma list of GARCH beta_1..beta_q");
  sub->add_option("--burn-in", f->burn_in, "warm-up samples to discard");
  sub->add_option("--n", f->n, "sample size (row length)");
  sub->add_option("--p", f->p, "dimension (row count)");
  sub->add_option("--seed", f->seed, "master seed");
  sub->add_option("--out", f->out_dir, "output directory");
  if (with_experiment) {
    sub->add_option("--k", f->k, "number of top eigenvalues");
    sub->add_option("--reps", f->reps, "number of replications");
    sub->add_option("--growth", f->growth, "beta | kappa | explicit");
    sub->add_option("--beta", f->beta, "growth exponent for p ~ n^beta");
    sub->add_option("--kappa", f->kappa, "growth exponent for p = n^kappa");
    sub->add_option("--x-grid", f->x_grid, "comma list of grid points");
    sub->add_option("--b-reps", f->b_reps, "rows for the b estimate");
  }
}

template <typename T>
std::string to_cfg_string(const T& v) {
  if constexpr (std::is_same_v<T, std::string>)
    return v;
  else if constexpr (std::is_floating_point_v<T>)
    return fmt(v);
  else
    return std::to_string(v);
}

KeyValues resolve(const CommonFlags& f) {
  KeyValues kv;
  if (f.config) kv = parse_config_file(*f.config);
  const std::string variant = f.process
                                  ? *f.process
                                  : (kv.has("process.variant")
                                         ? kv.get("process.variant")
                                         : "");
  if (!variant.empty()) kv.set("process.variant", variant);

  auto put = [&kv](const std::string& key, const auto& opt) {
    if (opt) kv.set(key, to_cfg_string(*opt));
  };
  if (variant == "iid") {
    put("process.iid.alpha", f.alpha);
    put("process.iid.q", f.q);
    put("process.iid.scale", f.scale);
  } else if (variant == "sv") {
    put("process.sv.z.alpha", f.alpha);
    put("process.sv.z.q", f.q);
    put("process.sv.z.scale", f.scale);
    if (f.vol) {
      const std::string v =
          *f.vol == "m-dependent" ? "m_dependent" : "exp_gaussian";
      kv.set("process.sv.vol.variant", v);
    }
    put("process.sv.vol.m", f.m);
    put("process.sv.vol.mu", f.mu);
    put("process.sv.vol.tau", f.tau);
    put("process.sv.vol.psi", f.psi);
    put("process.sv.vol.xi_std", f.xi_std);
  } else if (variant == "garch") {
    put("process.garch.a0", f.a0);
    put("process.garch.a", f.a_list);
    put("process.garch.b", f.b_list);
    if (f.a1) kv.set("process.garch.a", fmt(*f.a1));
    if (f.b1) kv.set("process.garch.b", fmt(*f.b1));
  }
  // alpha doubles as the experiment tail index for iid/sv rows; keep the
  // top-level key only when the process does not imply it.
  if (f.alpha && variant == "garch") kv.set("alpha", fmt(*f.alpha));
  put("process.burn_in", f.burn_in);
  put("n", f.n);
  put("p", f.p);
  put("k", f.k);
  put("reps", f.reps);
  put("seed", f.seed);
  put("b_reps", f.b_reps);
  put("x_grid", f.x_grid);
  if (f.growth) kv.set("growth.kind", *f.growth);
  put("growth.beta", f.beta);
  put("growth.kappa", f.kappa);
  if (f.growth && *f.growth == "explicit" && f.p)
    kv.set("growth.p", std::to_string(*f.p));
  for (const std::string& s : f.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParameterError("--set expects key=value, got: " + s);
    kv.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  return kv;
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_simulate(const CommonFlags& flags) {
  const auto t0 = Clock::now();
  KeyValues kv = resolve(flags);
  const ProcessSpec spec = process_from(kv);
  const std::size_t n = static_cast<std::size_t>(kv.get_u64("n"));
  const std::size_t p = static_cast<std::size_t>(kv.get_u64("p"));
  const std::uint64_t seed = kv.has("seed") ? kv.get_u64("seed") : 0;

  if (const auto* g = std::get_if<GarchProcess>(&spec.variant)) {
    if (g->garch.a.size() == 1 && g->garch.b.size() == 1 &&
        g->garch.a[0] > 0.0) {
      for (std::size_t nodes : {std::size_t{256}, std::size_t{2048}}) {
        try {
          const double margin =
              log_moment(MomentFunction{g->garch.a[0], g->garch.b[0], nodes});
          std::cerr << "stationarity margin E log(a1 Z^2 + b1) = "
                    << fmt(margin)
                    << (margin < 0 ? " (stationary)" : " (NOT stationary)")
                    << "\n";
          break;
        } catch (const PrecisionError&) {
          if (nodes == 2048) std::cerr << "stationarity margin unavailable\n";
        }
      }
    }
  }

  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);
  const ObservationMatrix m = build_matrix(spec, p, n, Rng(seed));
  const double sim_seconds = elapsed(t0);

  CsvWriter csv(dir / "paths.csv", "row,t,value");
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t t = 0; t < n; ++t)
      csv.row({std::to_string(i), std::to_string(t), fmt(m.at(i, t))});
  write_manifest(dir, "simulate", kv, {"paths.csv"},
                 {{"simulate", sim_seconds}, {"total", elapsed(t0)}});
  return 0;
}

int cmd_eigen(const CommonFlags& flags) {
  const auto t0 = Clock::now();
  KeyValues kv = resolve(flags);
  const ExperimentConfig cfg = experiment_from(kv);
  const std::size_t p = resolve_dimension(cfg.growth, cfg.n);

  const Rng master(cfg.seed);
  const double a_np =
      process_normalizer(cfg.process, master.fork("normalizer_parent"),
                         cfg.calibration_draws)
          .at(cfg.n * p);
  const double normalizer_sq = a_np * a_np;
  const std::vector<RepRecord> records = run_replications(cfg, p);

  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);
  CsvWriter csv(dir / "eigen.csv",
                "rep,rank,lambda,lambda_normalized,max_entry_sq,max_rowsum");
  for (std::size_t r = 0; r < records.size(); ++r) {
    const RepRecord& rec = records[r];
    for (std::size_t rank = 0; rank < rec.lambdas.size(); ++rank)
      csv.row({std::to_string(r), std::to_string(rank + 1),
               fmt(rec.lambdas[rank]),
               fmt(rec.lambdas[rank] / normalizer_sq),
               fmt(rec.max_entry_sq), fmt(rec.max_row_sum)});
  }
  json details;
  details["normalizer_sq"] = normalizer_sq;
  details["p"] = p;
  write_manifest(dir, "eigen", kv, {"eigen.csv"}, {{"total", elapsed(t0)}},
                 details);
  return 0;
}

json summary_json(const SummaryStats& s) {
  json j;
  j["median"] = s.median;
  j["mean"] = s.mean;
  j["min"] = s.min;
  j["max"] = s.max;
  j["mad_from_one"] = s.mad_from_one;
  return j;
}

int cmd_verify(const CommonFlags& flags) {
  const auto t0 = Clock::now();
  KeyValues kv = resolve(flags);
  const ExperimentConfig cfg = experiment_from(kv);
  const VerificationReport rep = run_experiment(cfg);

  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);

  json j;
  j["ks_largest"] = rep.ks_largest;
  if (std::isnan(rep.ks_uniform_spacing))
    j["ks_uniform_spacing"] = nullptr;
  else
    j["ks_uniform_spacing"] = rep.ks_uniform_spacing;
  j["ratio_max_diag"] = summary_json(rep.ratio_max_diag);
  j["ratio_max_entry"] = summary_json(rep.ratio_max_entry);
  j["b_used"] = rep.b_used;
  j["b_used_std_error"] = rep.b_used_std_error;
  j["normalizer_sq"] = rep.normalizer_sq;
  j["p"] = rep.p;
  j["n"] = cfg.n;
  j["reps"] = cfg.reps;
  j["tolerances"] = {{"ks_largest", rep.tol.ks_largest},
                     {"ks_spacing", rep.tol.ks_spacing},
                     {"ratio_lo", rep.tol.ratio_lo},
                     {"ratio_hi", rep.tol.ratio_hi}};
  j["checks"] = {{"ks_largest",
                  {{"enabled", rep.checks.ks_largest},
                   {"ok", rep.ks_largest_ok()}}},
                 {"ks_spacing",
                  {{"enabled", rep.checks.ks_spacing},
                   {"ok", rep.ks_spacing_ok()}}},
                 {"ratio_max_entry",
                  {{"enabled", rep.checks.ratio_max_entry},
                   {"ok", rep.ratio_max_entry_ok()}}}};
  j["warnings"] = rep.warnings;
  j["passed"] = rep.passed();
  {
    std::ofstream out(dir / "report.json");
    out << j.dump(2) << "\n";
  }

  const LimitLaw law{cfg.alpha, rep.b_used};
  CsvWriter csv(dir / "ecdf.csv", "x,empirical,theoretical");
  for (const auto& [x, f_hat] : rep.ecdf_points)
    csv.row({fmt(x), fmt(f_hat),
             fmt(rep.b_used > 0.0 ? frechet_cdf(law, x) : 1.0)});

  write_manifest(dir, "verify", kv, {"report.json", "ecdf.csv"},
                 {{"total", elapsed(t0)}});
  for (const std::string& w : rep.warnings)
    std::cerr << "warning: " << w << "\n";
  return rep.passed() ? 0 : 3;
}

int cmd_garch_alpha(double a1, double b1, std::size_t nodes, double tol) {
  const MomentFunction f{a1, b1, nodes};
  const TailIndexResult res = solve_tail_index(f, tol);
  json j;
  j["alpha_star"] = res.alpha_star;
  j["h_alpha_star"] = res.h_at_alpha;
  j["margin"] = res.margin;
  j["nodes"] = res.nodes;
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_b_estimate(const CommonFlags& flags) {
  KeyValues kv = resolve(flags);
  const ProcessSpec spec = process_from(kv);
  const double alpha = alpha_from(kv, spec);
  const std::size_t n = static_cast<std::size_t>(kv.get_u64("n"));
  const std::size_t p = static_cast<std::size_t>(kv.get_u64("p"));
  const std::size_t reps = static_cast<std::size_t>(kv.get_u64("reps"));
  const std::uint64_t seed = kv.has("seed") ? kv.get_u64("seed") : 0;
  std::vector<double> x_grid = {0.5, 1.0, 2.0, 4.0};
  if (kv.has("x_grid")) x_grid = kv.get_doubles("x_grid");

  const BEmpiricalResult res =
      b_empirical(spec, alpha, n, p, x_grid, reps, Rng(seed));
  json j;
  j["alpha"] = alpha;
  j["n"] = n;
  j["p"] = p;
  j["reps"] = res.reps;
  j["a_np_sq"] = res.a_np_sq;
  json grid = json::array();
  for (const auto& pt : res.points)
    grid.push_back({{"x", pt.x},
                    {"b_hat", pt.b_hat},
                    {"std_error", pt.std_error},
                    {"exceedances", pt.exceedances}});
  j["grid"] = grid;
  j["pooled"] = res.pooled;
  j["pooled_std_error"] = res.pooled_std_error;
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_hill(const std::string& input, const std::string& column,
             std::optional<std::uint64_t> k_opt) {
  std::ifstream in(input);
  if (!in) throw ParameterError("cannot open input file: " + input);
  std::string line;
  if (!std::getline(in, line))
    throw ParameterError("empty input file: " + input);
  // locate the column in the CSV header
  std::vector<std::string> header;
  {
    std::istringstream h(trim(line));
    std::string cell;
    while (std::getline(h, cell, ',')) header.push_back(trim(cell));
  }
  const auto col_it = std::find(header.begin(), header.end(), column);
  if (col_it == header.end())
    throw ParameterError("column '" + column + "' not in header of " + input);
  const std::size_t col =
      static_cast<std::size_t>(col_it - header.begin());
  std::vector<double> data;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(row, cell, ',')) {
      if (i++ == col) {
        try {
          data.push_back(std::stod(cell));
        } catch (const std::exception&) {
          throw ParameterError("bad numeric cell in " + input + ": '" +
                               cell + "'");
        }
      }
    }
  }
  if (data.size() < 2)
    throw ParameterError("need at least 2 data values for hill");
  const std::size_t k =
      k_opt ? static_cast<std::size_t>(*k_opt) : hill_default_k(data.size());
  const double alpha_hat = hill_estimate(data, k);
  json j;
  j["alpha_hat"] = alpha_hat;
  j["k"] = k;
  j["n"] = data.size();
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heavytail: eigenvalue limit laboratory for heavy-tailed "
               "sample covariance matrices"};
  app.require_subcommand(1);

  CommonFlags sim_flags, eigen_flags, verify_flags, b_flags;
  CLI::App* sim = app.add_subcommand(
      "simulate", "simulate p independent rows, write paths.csv");
  add_common_flags(sim, &sim_flags, false);

  CLI::App* eig = app.add_subcommand(
      "eigen", "top-k eigenvalues across replications, write eigen.csv");
  add_common_flags(eig, &eigen_flags, true);

  CLI::App* ver = app.add_subcommand(
      "verify", "run the limit-law verification harness, write report.json");
  add_common_flags(ver, &verify_flags, true);

  double ga_a1 = 0.0, ga_b1 = 0.0, ga_tol = kDefaultTailTol;
  std::uint64_t ga_nodes = 256;
  CLI::App* ga = app.add_subcommand(
      "garch-alpha", "solve E[(a1 Z^2 + b1)^alpha] = 1 for the tail index");
  ga->add_option("--a1", ga_a1, "GARCH alpha_1")->required();
  ga->add_option("--b1", ga_b1, "GARCH beta_1");
  ga->add_option("--nodes", ga_nodes, "Gauss-Hermite node count");
  ga->add_option("--tol", ga_tol, "tolerance on |h(alpha)-1|");

  CLI::App* be = app.add_subcommand(
      "b-estimate", "estimate the large-deviation constant b from rows");
  add_common_flags(be, &b_flags, true);

  std::string hill_input, hill_column = "value";
  std::optional<std::uint64_t> hill_k;
  CLI::App* hi = app.add_subcommand(
      "hill", "Hill tail-index estimate from a CSV column");
  hi->add_option("--input", hill_input, "CSV file")->required();
  hi->add_option("--column", hill_column, "column name (default: value)");
  hi->add_option("--k", hill_k, "upper order statistics (default n^0.6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_flags);
    if (eig->parsed()) return cmd_eigen(eigen_flags);
    if (ver->parsed()) return cmd_verify(verify_flags);
    if (ga->parsed()) {
      if (!(ga_a1 > 0.0)) {
        std::cerr << "usage error: --a1 must be > 0\n";
        return 2;
      }
      return cmd_garch_alpha(ga_a1, ga_b1,
                             static_cast<std::size_t>(ga_nodes), ga_tol);
    }
    if (be->parsed()) return cmd_b_estimate(b_flags);
    if (hi->parsed()) return cmd_hill(hill_input, hill_column, hill_k);
  } catch (const ParameterError& e) {
    std::cerr << "usage/config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

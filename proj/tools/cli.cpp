#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "stablereg/benchmark.hpp"
#include "stablereg/diagnostics.hpp"
#include "stablereg/error.hpp"
#include "stablereg/estimators.hpp"
#include "stablereg/format.hpp"
#include "stablereg/io.hpp"
#include "stablereg/parallel.hpp"
#include "stablereg/stable_model.hpp"

namespace stablereg::cli {

namespace {

using json = nlohmann::ordered_json;
using Resolved = std::vector<std::pair<std::string, std::string>>;

constexpr std::uint64_t kDefaultSeed = 20240101;

// Splits "a,b,c" into trimmed, nonempty items.
std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    const auto v = parse_double(item);
    if (!v) throw Error(ErrorKind::ConfigInvalid, what + ": '" + item + "' is not a number");
    out.push_back(*v);
  }
  return out;
}

LadGrid parse_lad_grid(const std::string& s) {
  return s == "capped" ? LadGrid::Capped : LadGrid::Printed;
}

StandardizationMethod parse_standardization(const std::string& s) {
  return s == "fama-roll" ? StandardizationMethod::FamaRoll : StandardizationMethod::McCulloch;
}

std::string lad_grid_name(LadGrid g) { return g == LadGrid::Capped ? "capped" : "printed"; }

// `--config FILE` (key = value) and `--manifest FILE` (JSON written by a
// previous run) expand into `--key value` pairs placed before the explicit
// arguments, so explicit flags win under the take-last policy.
std::vector<std::string> expand_config_files(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  std::vector<std::string> injected;
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    std::optional<std::string> config_path;
    std::optional<std::string> manifest_path;
    if (a == "--config" || a == "--manifest") {
      if (i + 1 >= args.size()) throw Error(ErrorKind::ConfigInvalid, a + " needs a path");
      (a == "--config" ? config_path : manifest_path) = args[++i];
    } else if (a.starts_with("--config=")) {
      config_path = a.substr(9);
    } else if (a.starts_with("--manifest=")) {
      manifest_path = a.substr(11);
    } else {
      rest.push_back(a);
      continue;
    }
    if (config_path) {
      for (const auto& [k, v] : parse_key_value_text(read_text_file(*config_path))) {
        injected.push_back("--" + k);
        injected.push_back(v);
      }
    }
    if (manifest_path) {
      const json m = json::parse(read_text_file(*manifest_path));
      if (m.value("subcommand", "") != args[0]) {
        throw Error(ErrorKind::ConfigInvalid,
                    "manifest is for subcommand '" + m.value("subcommand", "") + "'");
      }
      for (const auto& [k, v] : m.at("config").items()) {
        if (k == "kind" || k == "input") {
          rest.insert(rest.begin(), v.get<std::string>());
          continue;
        }
        if (v.get<std::string>().empty()) continue;
        injected.push_back("--" + k);
        injected.push_back(v.get<std::string>());
      }
    }
  }
  std::vector<std::string> out{args[0]};
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

json make_manifest(const std::string& subcommand, const Resolved& config,
                   std::uint64_t seed, const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "stablereg";
  m["version"] = STABLEREG_VERSION;
  m["subcommand"] = subcommand;
  m["seed"] = seed;
  json cfg = json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  m["config"] = cfg;
  m["outputs"] = outputs;
  return m;
}

// Data goes to --out when given, else to `out`; the manifest is written
// next to the data file and echoed on `out`, or sent to `err` when the data
// itself occupies `out`.
void emit(const std::string& out_path, const std::string& data, json manifest,
          std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    out << data;
    err << manifest.dump(2) << '\n';
    return;
  }
  write_text_file(out_path, data);
  const std::string manifest_path = out_path + ".manifest.json";
  manifest["manifest_path"] = manifest_path;
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  out << manifest.dump(2) << '\n';
}

struct Shared {
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  unsigned threads = default_threads();
};

void add_shared(CLI::App* sub, Shared& s) {
  sub->add_option("--seed", s.seed, "Master RNG seed")->capture_default_str();
  sub->add_option("--out", s.out, "Output file (default: standard output)");
  sub->add_option("--threads", s.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  // Consumed before parsing; declared so they show up in --help.
  sub->add_option("--config", "key = value file supplying option defaults");
  sub->add_option("--manifest", "Manifest of a previous run to replay");
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::string input;
  std::string method = "lad";
  std::string k_mode = "mcculloch";
  std::string lad_grid = "printed";
  std::string kw_standardization = "mcculloch";
};

int do_fit(const FitArgs& a, const Shared& s, std::ostream& out, std::ostream& err) {
  const std::string raw = read_text_file(a.input);
  std::vector<double> values;
  try {
    values = parse_sample_text(raw);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, a.input + ": " + e.what());
  }
  if (values.size() < kMinSampleSize) {
    std::ostringstream os;
    os << "sample too small: " << values.size() << " values in " << a.input
       << ", need at least " << kMinSampleSize;
    throw Error(ErrorKind::SampleTooSmall, os.str());
  }
  const Method method = *parse_method(a.method);
  EstimatorOptions opts;
  opts.lad_grid = parse_lad_grid(a.lad_grid);
  opts.kogon_williams_standardization = parse_standardization(a.kw_standardization);
  opts.k_selection = KSelection::parse(a.k_mode);
  const Estimate est = estimate(method, values, opts);

  json r;
  r["method"] = to_string(method);
  if (method == Method::Koutrouvelis) {
    r["k_mode"] = opts.k_selection.to_string();
    r["k"] = est.resolved_k->k;
    r["k_table_out_of_range"] = est.resolved_k->out_of_range;
  }
  r["alpha_hat"] = est.alpha_hat;
  r["sigma_hat"] = est.sigma_hat;
  r["grid"] = std::vector<double>(est.grid.points().begin(), est.grid.points().end());
  r["standardization"] = {{"method", to_string(est.standardization.method)},
                          {"location", est.standardization.location},
                          {"scale", est.standardization.scale}};
  r["mcculloch_out_of_range"] = est.mcculloch_out_of_range;
  r["regression"] = {{"intercept", est.fit.intercept},
                     {"slope", est.fit.slope},
                     {"iterations", est.fit.iterations},
                     {"converged", est.fit.converged},
                     {"objective", est.fit.objective},
                     {"objective_kind", method == Method::Lad ? "l1" : "l2"}};
  r["input"] = {{"path", a.input}, {"n", values.size()}, {"fnv1a64", fnv1a64_hex(raw)}};
  if (!est.fit.converged) err << "warning: IRLS did not converge; best iterate reported\n";

  const Resolved cfg = {{"input", a.input},
                        {"method", a.method},
                        {"k-mode", a.k_mode},
                        {"lad-grid", a.lad_grid},
                        {"kw-standardization", a.kw_standardization},
                        {"seed", std::to_string(s.seed)},
                        {"out", s.out}};
  json manifest = make_manifest("fit", cfg, s.seed, {s.out.empty() ? "-" : s.out});
  manifest["input_fnv1a64"] = fnv1a64_hex(raw);
  emit(s.out, r.dump(2) + "\n", manifest, out, err);
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  double alpha = 1.5;
  double sigma = 1.0;
  double beta = 0.0;
  double mu = 0.0;
  std::size_t n = 100;
};

int do_simulate(const SimulateArgs& a, const Shared& s, std::ostream& out, std::ostream& err) {
  const StableParams params(a.alpha, a.sigma, a.beta, a.mu);
  const std::vector<double> x = sample_stable_values(params, a.n, s.seed);
  const Resolved cfg = {{"alpha", format_double(a.alpha)}, {"sigma", format_double(a.sigma)},
                        {"beta", format_double(a.beta)},   {"mu", format_double(a.mu)},
                        {"n", std::to_string(a.n)},        {"seed", std::to_string(s.seed)},
                        {"out", s.out}};
  emit(s.out, format_sample_text(x),
       make_manifest("simulate", cfg, s.seed, {s.out.empty() ? "-" : s.out}), out, err);
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchmarkArgs {
  std::string alphas = "1.9,1.5,1.3,1.1,0.9,0.7";
  double beta = 0.0;
  double sigma = 1.0;
  double mu = 0.0;
  std::size_t n = 100;
  std::size_t replications = 10000;
  std::string methods = "lad,kw,ls-mid";
  std::string lad_grid = "printed";
  std::string kw_standardization = "mcculloch";
};

int do_benchmark(const BenchmarkArgs& a, const Shared& s, std::ostream& out,
                 std::ostream& err) {
  BenchmarkConfig c;
  c.alphas = parse_double_list(a.alphas, "alphas");
  c.beta = a.beta;
  c.sigma = a.sigma;
  c.mu = a.mu;
  c.n = a.n;
  c.replications = a.replications;
  c.methods = split_list(a.methods);
  c.master_seed = s.seed;
  c.lad_grid = parse_lad_grid(a.lad_grid);
  c.kogon_williams_standardization = parse_standardization(a.kw_standardization);
  const BenchmarkReport report = run_benchmark(c, s.threads);

  std::vector<std::string> warnings;
  for (const auto& row : report.rows) {
    if (row.failures_flagged) {
      std::ostringstream os;
      os << row.method << " " << to_string(row.target) << " alpha=" << row.alpha_true << ": "
         << row.failures << " of " << row.replications << " replications failed";
      warnings.push_back(os.str());
    }
  }
  bool caveat = false;
  for (double alpha : c.alphas) caveat = caveat || alpha < 1.0;
  if (caveat) {
    warnings.emplace_back(
        "rows with alpha < 1 use Fama-Roll standardization outside its valid range (alpha >= 1)");
  }
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  std::vector<std::string> alpha_text;
  for (double alpha : c.alphas) alpha_text.push_back(format_double(alpha));
  const Resolved cfg = {{"alphas", join(alpha_text)},
                        {"beta", format_double(a.beta)},
                        {"sigma", format_double(a.sigma)},
                        {"mu", format_double(a.mu)},
                        {"n", std::to_string(a.n)},
                        {"M", std::to_string(a.replications)},
                        {"methods", join(c.methods)},
                        {"lad-grid", lad_grid_name(c.lad_grid)},
                        {"kw-standardization", a.kw_standardization},
                        {"seed", std::to_string(s.seed)},
                        {"out", s.out}};
  json manifest = make_manifest("benchmark", cfg, s.seed, {s.out.empty() ? "-" : s.out});
  manifest["warnings"] = warnings;
  emit(s.out, report.to_csv(), manifest, out, err);
  return 0;
}

// ---------------------------------------------------------------------------

struct DiagnoseArgs {
  std::string kind;
  std::optional<double> alpha;
  std::optional<double> sigma;
  double beta = 0.0;
  std::size_t n = 200;
  std::optional<std::size_t> replications;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<std::size_t> points;
  std::string line = "true";
  std::size_t max_lag = 10;
  std::size_t k_min = 10;
  std::size_t k_max = 40;
};

std::string tsv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  const auto put = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += '\t';
      out += cells[i];
    }
    out += '\n';
  };
  put(header);
  for (const auto& r : rows) put(r);
  return out;
}

int do_diagnose(DiagnoseArgs a, const Shared& s, std::ostream& out, std::ostream& err) {
  const bool rv = a.kind == "residual-variance";
  const bool acf = a.kind == "acf";
  if (a.line != "true" && a.line != "estimated") {
    throw Error(ErrorKind::ConfigInvalid, "--line must be 'true' or 'estimated'");
  }
  const bool true_line = rv && a.line == "true";
  // Defaults follow the figure each kind reproduces.
  const double alpha = a.alpha.value_or(rv ? 1.5 : acf ? 0.9 : 1.3);
  const double sigma = a.sigma.value_or(true_line ? 0.1 : 1.0);
  const std::size_t reps = a.replications.value_or(rv ? (true_line ? 1000 : 500) : 500);
  const double t_min = a.t_min.value_or(0.1);
  const double t_max = a.t_max.value_or(true_line ? 20.0 : 2.8);
  const std::size_t points = a.points.value_or(true_line ? 200 : 28);

  Resolved cfg = {{"kind", a.kind},
                  {"alpha", format_double(alpha)},
                  {"sigma", format_double(sigma)},
                  {"beta", format_double(a.beta)},
                  {"n", std::to_string(a.n)}};
  std::string data;
  json extra = json::object();

  if (a.kind == "k-sensitivity") {
    if (a.k_min < 2 || a.k_max < a.k_min) {
      throw Error(ErrorKind::ConfigInvalid, "need 2 <= k-min <= k-max");
    }
    std::vector<std::size_t> ks;
    for (std::size_t k = a.k_min; k <= a.k_max; ++k) ks.push_back(k);
    const StableParams params(alpha, sigma, a.beta);
    const auto curve =
        k_sensitivity_curve(simulated_moduli(params, a.n, s.seed, true), reps, ks, s.threads);
    std::vector<std::vector<std::string>> rows;
    json failures = json::array();
    for (const auto& p : curve) {
      rows.push_back({std::to_string(p.k), format_double(p.mean_alpha_koutrouvelis),
                      format_double(p.mean_alpha_lad)});
      failures.push_back({p.k, p.failures_koutrouvelis, p.failures_lad});
    }
    data = tsv({"K", "mean_alpha_koutrouvelis", "mean_alpha_lad"}, rows);
    extra["failures_k_koutrouvelis_lad"] = failures;
    cfg.push_back({"M", std::to_string(reps)});
    cfg.push_back({"k-min", std::to_string(a.k_min)});
    cfg.push_back({"k-max", std::to_string(a.k_max)});
  } else {
    const TGrid grid = TGrid::uniform(t_min, t_max, points);
    cfg.push_back({"t-min", format_double(t_min)});
    cfg.push_back({"t-max", format_double(t_max)});
    cfg.push_back({"points", std::to_string(points)});
    const StableParams params(alpha, sigma, a.beta);
    if (rv) {
      const auto profile =
          residual_variance_profile(params, a.n, reps, grid, true_line, s.seed, s.threads);
      std::vector<std::vector<std::string>> rows;
      json dropped = json::array();
      for (const auto& p : profile) {
        rows.push_back({format_double(p.t), format_double(p.variance)});
        dropped.push_back(p.dropped);
      }
      data = tsv({"t", "variance"}, rows);
      extra["dropped_per_t"] = dropped;
      cfg.push_back({"M", std::to_string(reps)});
      cfg.push_back({"line", a.line});
    } else {
      StreamRng rng = StreamRng::derive(s.seed, {0, 0});
      const std::vector<double> x = sample_stable_values(params, a.n, rng);
      const auto acf_values = residual_acf(regression_residuals(x, grid), a.max_lag);
      std::vector<std::vector<std::string>> rows;
      for (std::size_t h = 0; h < acf_values.size(); ++h) {
        rows.push_back({std::to_string(h), format_double(acf_values[h])});
      }
      data = tsv({"lag", "acf"}, rows);
      cfg.push_back({"max-lag", std::to_string(a.max_lag)});
    }
  }
  cfg.push_back({"seed", std::to_string(s.seed)});
  cfg.push_back({"out", s.out});
  json manifest = make_manifest("diagnose", cfg, s.seed, {s.out.empty() ? "-" : s.out});
  manifest["details"] = extra;
  emit(s.out, data, manifest, out, err);
  return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regression-type estimation of the stable index and scale from the "
               "empirical characteristic function",
               "stablereg"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", STABLEREG_VERSION);

  Shared fit_shared, sim_shared, bench_shared, diag_shared;

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Estimate alpha and sigma from a data file");
  fit_cmd->add_option("input", fit.input, "One value per line; '#' comments allowed")
      ->required()
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--method", fit.method)
      ->check(CLI::IsMember({"lad", "kw", "ls-mid", "koutrouvelis"}))
      ->capture_default_str();
  fit_cmd->add_option("--k-mode", fit.k_mode, "fixed:<K> | oracle:<alpha> | mcculloch")
      ->capture_default_str();
  fit_cmd->add_option("--lad-grid", fit.lad_grid)
      ->check(CLI::IsMember({"printed", "capped"}))
      ->capture_default_str();
  fit_cmd->add_option("--kw-standardization", fit.kw_standardization)
      ->check(CLI::IsMember({"mcculloch", "fama-roll"}))
      ->capture_default_str();
  add_shared(fit_cmd, fit_shared);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Draw stable variates, one per line");
  sim_cmd->add_option("--alpha", sim.alpha)->capture_default_str();
  sim_cmd->add_option("--sigma", sim.sigma)->capture_default_str();
  sim_cmd->add_option("--beta", sim.beta)->capture_default_str();
  sim_cmd->add_option("--mu", sim.mu)->capture_default_str();
  sim_cmd->add_option("--n", sim.n)->check(CLI::PositiveNumber)->capture_default_str();
  add_shared(sim_cmd, sim_shared);

  BenchmarkArgs bench;
  auto* bench_cmd = app.add_subcommand("benchmark", "Monte Carlo bias/MSE study, CSV output");
  bench_cmd->add_option("--alphas", bench.alphas, "Comma-separated true indices")
      ->capture_default_str();
  bench_cmd->add_option("--beta", bench.beta)->capture_default_str();
  bench_cmd->add_option("--sigma", bench.sigma)->capture_default_str();
  bench_cmd->add_option("--mu", bench.mu)->capture_default_str();
  bench_cmd->add_option("--n", bench.n)->capture_default_str();
  bench_cmd->add_option("--M", bench.replications, "Replications per alpha")
      ->capture_default_str();
  bench_cmd
      ->add_option("--methods", bench.methods,
                   "Comma-separated: lad, kw, ls-mid, koutrouvelis-oracle, "
                   "koutrouvelis-mcculloch, koutrouvelis-fixed:<K>")
      ->capture_default_str();
  bench_cmd->add_option("--lad-grid", bench.lad_grid)
      ->check(CLI::IsMember({"printed", "capped"}))
      ->capture_default_str();
  bench_cmd->add_option("--kw-standardization", bench.kw_standardization)
      ->check(CLI::IsMember({"mcculloch", "fama-roll"}))
      ->capture_default_str();
  add_shared(bench_cmd, bench_shared);

  DiagnoseArgs diag;
  auto* diag_cmd = app.add_subcommand("diagnose", "Residual and K-sensitivity plot data (TSV)");
  diag_cmd->add_option("kind", diag.kind)
      ->required()
      ->check(CLI::IsMember({"residual-variance", "acf", "k-sensitivity"}));
  diag_cmd->add_option("--alpha", diag.alpha);
  diag_cmd->add_option("--sigma", diag.sigma);
  diag_cmd->add_option("--beta", diag.beta)->capture_default_str();
  diag_cmd->add_option("--n", diag.n)->capture_default_str();
  diag_cmd->add_option("--M", diag.replications);
  diag_cmd->add_option("--t-min", diag.t_min);
  diag_cmd->add_option("--t-max", diag.t_max);
  diag_cmd->add_option("--points", diag.points);
  diag_cmd->add_option("--line", diag.line, "residual-variance: true | estimated")
      ->capture_default_str();
  diag_cmd->add_option("--max-lag", diag.max_lag)->capture_default_str();
  diag_cmd->add_option("--k-min", diag.k_min)->capture_default_str();
  diag_cmd->add_option("--k-max", diag.k_max)->capture_default_str();
  add_shared(diag_cmd, diag_shared);

  try {
    std::vector<std::string> expanded = expand_config_files(args);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (fit_cmd->parsed()) return do_fit(fit, fit_shared, out, err);
    if (sim_cmd->parsed()) return do_simulate(sim, sim_shared, out, err);
    if (bench_cmd->parsed()) return do_benchmark(bench, bench_shared, out, err);
    if (diag_cmd->parsed()) return do_diagnose(diag, diag_shared, out, err);
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace stablereg::cli

#include "stablereg/benchmark.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "stablereg/error.hpp"
#include "stablereg/format.hpp"
#include "stablereg/parallel.hpp"
#include "stablereg/rng.hpp"

namespace stablereg {

BiasMse bias_mse(std::span<const double> estimates, double true_value) {
  if (estimates.empty()) {
    throw Error(ErrorKind::InvalidParameter, "bias/MSE of an empty estimate set");
  }
  const double m = static_cast<double>(estimates.size());
  double sum = 0.0;
  double sq = 0.0;
  for (double e : estimates) {
    sum += e;
    sq += (e - true_value) * (e - true_value);
  }
  BiasMse out;
  out.mean = sum / m;
  out.bias = out.mean - true_value;
  out.mse = sq / m;
  return out;
}

BenchmarkMethod BenchmarkMethod::parse(std::string_view tag) {
  const std::string t(tag);
  if (auto m = parse_method(tag); m && *m != Method::Koutrouvelis) {
    return BenchmarkMethod(t, *m, std::nullopt, 0);
  }
  if (tag == "koutrouvelis-oracle") {
    return BenchmarkMethod(t, Method::Koutrouvelis, KSelection::Mode::OracleTrueAlpha, 0);
  }
  if (tag == "koutrouvelis-mcculloch") {
    return BenchmarkMethod(t, Method::Koutrouvelis, KSelection::Mode::McCullochInitial, 0);
  }
  constexpr std::string_view fixed_prefix = "koutrouvelis-fixed:";
  if (tag.starts_with(fixed_prefix)) {
    const std::string_view arg = tag.substr(fixed_prefix.size());
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec == std::errc{} && ptr == arg.data() + arg.size() && k >= 2) {
      return BenchmarkMethod(t, Method::Koutrouvelis, KSelection::Mode::Fixed, k);
    }
  }
  throw Error(ErrorKind::ConfigInvalid,
              "unknown method '" + t +
                  "' (expected lad, kw, ls-mid, koutrouvelis-oracle, "
                  "koutrouvelis-mcculloch or koutrouvelis-fixed:<K>)");
}

KSelection BenchmarkMethod::k_selection(double alpha_true) const {
  if (!k_mode_) return KSelection::mcculloch();
  switch (*k_mode_) {
    case KSelection::Mode::Fixed: return KSelection::fixed(fixed_k_);
    case KSelection::Mode::OracleTrueAlpha: return KSelection::oracle(alpha_true);
    case KSelection::Mode::McCullochInitial: return KSelection::mcculloch();
  }
  return KSelection::mcculloch();
}

std::vector<std::string> BenchmarkConfig::violations() const {
  std::vector<std::string> out;
  if (alphas.empty()) out.emplace_back("alphas must not be empty");
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 2.0)) out.push_back("alpha " + format_double(a) + " not in (0, 2]");
  }
  if (!(beta >= -1.0 && beta <= 1.0)) out.emplace_back("beta must be in [-1, 1]");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) out.emplace_back("sigma must be > 0");
  if (!std::isfinite(mu)) out.emplace_back("mu must be finite");
  if (n < kMinSampleSize) out.emplace_back("n must be >= 10");
  if (replications < 1) out.emplace_back("M must be >= 1");
  if (methods.empty()) out.emplace_back("at least one method is required");
  for (const auto& m : methods) {
    try {
      BenchmarkMethod::parse(m);
    } catch (const Error& e) {
      out.emplace_back(e.what());
    }
  }
  return out;
}

void BenchmarkConfig::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid benchmark configuration:";
  for (const auto& msg : v) os << "\n  - " << msg;
  throw Error(ErrorKind::ConfigInvalid, os.str());
}

std::string_view to_string(Target t) noexcept {
  return t == Target::Index ? "index" : "scale";
}

std::string BenchmarkReport::to_csv() const {
  std::ostringstream os;
  os << "method,target,alpha_true,beta,n,M,mean,bias,mse,failures\n";
  for (const auto& r : rows) {
    os << r.method << ',' << to_string(r.target) << ',' << format_double(r.alpha_true) << ','
       << format_double(r.beta) << ',' << r.n << ',' << r.replications << ','
       << format_double(r.mean) << ',' << format_double(r.bias) << ',' << format_double(r.mse)
       << ',' << r.failures << '\n';
  }
  return os.str();
}

const BenchmarkRow* BenchmarkReport::find(std::string_view method, Target target,
                                          double alpha_true) const {
  for (const auto& r : rows) {
    if (r.method == method && r.target == target && r.alpha_true == alpha_true) return &r;
  }
  return nullptr;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

BenchmarkRow aggregate(const std::string& method, Target target, double alpha_true,
                       const BenchmarkConfig& config, std::span<const double> raw) {
  const double truth = target == Target::Index ? alpha_true : config.sigma;
  std::vector<double> ok;
  ok.reserve(raw.size());
  for (double v : raw) {
    if (!std::isnan(v)) ok.push_back(v);
  }
  BenchmarkRow row;
  row.method = method;
  row.target = target;
  row.alpha_true = alpha_true;
  row.beta = config.beta;
  row.n = config.n;
  row.replications = config.replications;
  row.failures = raw.size() - ok.size();
  row.failures_flagged = static_cast<double>(row.failures) > 0.001 * static_cast<double>(raw.size());
  row.fama_roll_caveat = alpha_true < 1.0;
  if (ok.empty()) {
    row.mean = row.bias = row.mse = kNaN;
  } else {
    const BiasMse s = bias_mse(ok, truth);
    row.mean = s.mean;
    row.bias = s.bias;
    row.mse = s.mse;
  }
  return row;
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& config, unsigned threads) {
  config.validate();
  std::vector<BenchmarkMethod> methods;
  for (const auto& tag : config.methods) methods.push_back(BenchmarkMethod::parse(tag));

  EstimatorOptions base;
  base.lad_grid = config.lad_grid;
  base.kogon_williams_standardization = config.kogon_williams_standardization;

  BenchmarkReport report;
  report.config = config;
  const std::size_t reps = config.replications;
  const std::size_t nm = methods.size();

  for (std::size_t ai = 0; ai < config.alphas.size(); ++ai) {
    const double alpha = config.alphas[ai];
    const StableParams params(alpha, config.sigma, config.beta, config.mu);

    std::vector<EstimatorOptions> per_method(nm, base);
    for (std::size_t m = 0; m < nm; ++m) per_method[m].k_selection = methods[m].k_selection(alpha);

    // Layout: [method][replication].
    std::vector<double> alpha_hat(nm * reps, kNaN);
    std::vector<double> sigma_hat(nm * reps, kNaN);

    parallel_for(reps, threads, [&](std::size_t r) {
      StreamRng rng = StreamRng::derive(config.master_seed, {ai, r});
      const std::vector<double> sample = sample_stable_values(params, config.n, rng);
      for (std::size_t m = 0; m < nm; ++m) {
        try {
          const Estimate est = estimate(methods[m].method(), sample, per_method[m]);
          alpha_hat[m * reps + r] = est.alpha_hat;
          sigma_hat[m * reps + r] = est.sigma_hat;
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::Internal) throw;
        }
      }
    });

    for (std::size_t m = 0; m < nm; ++m) {
      const std::span<const double> a(alpha_hat.data() + m * reps, reps);
      const std::span<const double> s(sigma_hat.data() + m * reps, reps);
      report.rows.push_back(aggregate(methods[m].tag(), Target::Index, alpha, config, a));
      report.rows.push_back(aggregate(methods[m].tag(), Target::Scale, alpha, config, s));
    }
  }
  return report;
}

}  // namespace stablereg

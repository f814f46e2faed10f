#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stablereg/estimators.hpp"

namespace stablereg {

struct BiasMse {
  double mean = 0.0;
  double bias = 0.0;
  double mse = 0.0;
};

/// mean = sum/M, bias = mean - truth, mse = sum (e - truth)^2 / M.
/// Requires a nonempty input.
BiasMse bias_mse(std::span<const double> estimates, double true_value);

/// A benchmark column: an estimator plus, for Koutrouvelis, how K is chosen.
///
/// Tags: lad, kw, ls-mid, koutrouvelis-oracle, koutrouvelis-mcculloch,
/// koutrouvelis-fixed:<K>. The oracle variant looks K up at the true alpha of
/// the row being simulated.
class BenchmarkMethod {
 public:
  static BenchmarkMethod parse(std::string_view tag);

  const std::string& tag() const noexcept { return tag_; }
  Method method() const noexcept { return method_; }

  /// K selection to use when the true index is `alpha_true`.
  KSelection k_selection(double alpha_true) const;

 private:
  BenchmarkMethod(std::string tag, Method method, std::optional<KSelection::Mode> mode,
                  std::size_t fixed_k)
      : tag_(std::move(tag)), method_(method), k_mode_(mode), fixed_k_(fixed_k) {}

  std::string tag_;
  Method method_;
  std::optional<KSelection::Mode> k_mode_;
  std::size_t fixed_k_ = 0;
};

struct BenchmarkConfig {
  std::vector<double> alphas = {1.9, 1.5, 1.3, 1.1, 0.9, 0.7};
  double beta = 0.0;
  double sigma = 1.0;
  double mu = 0.0;
  std::size_t n = 100;
  std::size_t replications = 10000;
  std::vector<std::string> methods = {"lad", "kw", "ls-mid"};
  std::uint64_t master_seed = 20240101;
  LadGrid lad_grid = LadGrid::Printed;
  StandardizationMethod kogon_williams_standardization = StandardizationMethod::McCulloch;

  /// Every violated constraint, one message each; empty when valid.
  std::vector<std::string> violations() const;
  /// Throws ConfigInvalid listing all violations.
  void validate() const;
};

enum class Target { Index, Scale };
std::string_view to_string(Target t) noexcept;

struct BenchmarkRow {
  std::string method;
  Target target = Target::Index;
  double alpha_true = 0.0;
  double beta = 0.0;
  std::size_t n = 0;
  std::size_t replications = 0;
  double mean = 0.0;
  double bias = 0.0;
  double mse = 0.0;
  std::size_t failures = 0;
  /// failures exceed 0.1% of the replications.
  bool failures_flagged = false;
  /// alpha_true < 1, where the Fama-Roll scale is outside its valid range.
  bool fama_roll_caveat = false;
};

struct BenchmarkReport {
  BenchmarkConfig config;
  std::vector<BenchmarkRow> rows;

  /// Header `method,target,alpha_true,beta,n,M,mean,bias,mse,failures`, one
  /// line per row, numbers in shortest round-trip form.
  std::string to_csv() const;

  const BenchmarkRow* find(std::string_view method, Target target, double alpha_true) const;
};

/// Runs every configured method on common samples. Replication r of the
/// alpha at index a draws from StreamRng::derive(master_seed, {a, r}). The
/// report is bit-identical for any `threads`.
BenchmarkReport run_benchmark(const BenchmarkConfig& config, unsigned threads = 1);

}  // namespace stablereg

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stablereg/ecf.hpp"
#include "stablereg/estimators.hpp"
#include "stablereg/stable_model.hpp"

namespace stablereg {

/// Squared ECF moduli for replication `rep` on `grid`. The diagnostics are
/// written against this hook so theoretical moduli can stand in for data.
using ModuliSource = std::function<std::vector<double>(std::size_t rep, const TGrid& grid)>;

/// Moduli of fresh samples from `params`, stream derive(seed, {0, rep});
/// optionally standardized (trimmed mean + Fama-Roll) first.
ModuliSource simulated_moduli(const StableParams& params, std::size_t n, std::uint64_t seed,
                              bool standardized);

/// Theoretical |phi(t)|^2 for every replication.
ModuliSource theoretical_moduli(const StableParams& params);

struct VariancePoint {
  double t = 0.0;
  double variance = 0.0;
  /// Replications that contributed at this t.
  std::size_t used = 0;
  /// Replications dropped because the ECF was degenerate.
  std::size_t dropped = 0;
};

enum class ResidualLine {
  True,       // residual about log(2 sigma^alpha) + alpha log t
  Estimated,  // residual about each replication's own OLS line over the grid
};

/// Sample variance (denominator M - 1) of the regression residual at each t
/// across `replications` draws from `source`. For ResidualLine::True,
/// `params` supplies the line; degenerate t's are dropped individually. For
/// ResidualLine::Estimated a replication with any degenerate t is dropped for
/// every t.
std::vector<VariancePoint> residual_variance_profile(const ModuliSource& source,
                                                     const StableParams& params,
                                                     std::size_t replications,
                                                     const TGrid& grid, ResidualLine line,
                                                     unsigned threads = 1);

/// Convenience overload simulating from `params`: raw data for the true
/// line, standardized data for estimated lines.
std::vector<VariancePoint> residual_variance_profile(const StableParams& params, std::size_t n,
                                                     std::size_t replications,
                                                     const TGrid& grid, bool use_true_line,
                                                     std::uint64_t seed, unsigned threads = 1);

/// OLS residuals y_k - m - slope * omega_k of one standardized sample.
std::vector<double> regression_residuals(std::span<const double> values, const TGrid& grid);

/// r(h) = sum (e_k - mean)(e_{k+h} - mean) / sum (e_k - mean)^2, h = 0..max_lag.
/// Requires size > max_lag; throws ZeroVariance for constant input.
std::vector<double> residual_acf(std::span<const double> residuals, std::size_t max_lag);

struct KSensitivityPoint {
  std::size_t k = 0;
  /// Mean alpha-hat of OLS on pi j / 25, j = 1..K.
  double mean_alpha_koutrouvelis = 0.0;
  /// Mean alpha-hat of IRLS LAD on K uniform points in [0.1, 1.0].
  double mean_alpha_lad = 0.0;
  std::size_t failures_koutrouvelis = 0;
  std::size_t failures_lad = 0;
};

/// Both curves evaluated on the same replications for every K. `source`
/// must yield moduli of standardized data.
std::vector<KSensitivityPoint> k_sensitivity_curve(const ModuliSource& source,
                                                   std::size_t replications,
                                                   std::span<const std::size_t> k_range,
                                                   unsigned threads = 1);

/// Simulates standardized samples from a symmetric law with unit scale.
std::vector<KSensitivityPoint> k_sensitivity_curve(double alpha, std::size_t n,
                                                   std::size_t replications,
                                                   std::span<const std::size_t> k_range,
                                                   std::uint64_t seed, unsigned threads = 1);

}  // namespace stablereg

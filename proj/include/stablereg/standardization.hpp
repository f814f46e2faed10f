#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "stablereg/stable_model.hpp"

namespace stablereg {

/// Sample quantile by linear interpolation between order statistics placed at
/// probability positions (j - 0.5)/n, j = 1..n; clamped to the extremes
/// outside [0.5/n, 1 - 0.5/n]. `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double p);

/// Sorts a copy and evaluates quantile_sorted.
double sample_quantile(std::span<const double> values, double p);

/// Mean after removing floor(trim * n) observations from each tail.
/// Requires 0 <= trim < 0.5; throws EmptyAfterTrim if nothing remains.
double trimmed_mean(std::span<const double> values, double trim);

/// (q(0.72) - q(0.28)) / 1.654. Throws ZeroSpread when the quantiles coincide.
double fama_roll_scale(std::span<const double> values);

enum class StandardizationMethod { FamaRoll, McCulloch };

std::string_view to_string(StandardizationMethod m) noexcept;

struct Standardization {
  double location = 0.0;
  double scale = 1.0;
  StandardizationMethod method = StandardizationMethod::FamaRoll;
};

struct StandardizedSample {
  std::vector<double> values;
  Standardization record;
};

/// z_j = (x_j - location) / scale with location the 25% trimmed mean and
/// scale the Fama-Roll estimate.
StandardizedSample standardize(std::span<const double> values);

/// Same transform with McCulloch's location (zeta) and scale (c).
StandardizedSample standardize_mcculloch(std::span<const double> values);

StandardizedSample standardize(std::span<const double> values, StandardizationMethod method);

/// McCulloch (1986) quantile estimates.
struct McCullochEstimate {
  double alpha = 2.0;
  double beta = 0.0;
  double sigma = 1.0;
  /// S1 location delta.
  double mu = 0.0;
  /// Location of the mode-ish centre, zeta = q50 + c * phi5(alpha, beta).
  double zeta = 0.0;
  /// Set when a quantile ratio fell outside the tabulated range and the
  /// boundary value was used.
  bool out_of_range = false;

  StableParams params() const { return StableParams(alpha, sigma, beta, mu); }
};

/// Requires at least 5 values; throws ZeroSpread when the interquartile
/// range vanishes.
McCullochEstimate mcculloch_initial(std::span<const double> values);

namespace mcculloch_tables {

/// Lower end of the alpha-ratio table (the Gaussian value).
inline constexpr double kNuAlphaMin = 2.439;
inline constexpr double kNuAlphaMax = 25.0;
inline constexpr double kAlphaMin = 0.5;

/// alpha = psi1(nu_alpha, |nu_beta|), bilinear.
double psi1(double nu_alpha, double nu_beta_abs);
/// |beta| = psi2(nu_alpha, |nu_beta|), bilinear.
double psi2(double nu_alpha, double nu_beta_abs);
/// nu_c = phi3(alpha, |beta|) = (q75 - q25) / c.
double phi3(double alpha, double beta_abs);
/// phi5(alpha, |beta|); sign follows beta.
double phi5(double alpha, double beta_abs);

}  // namespace mcculloch_tables

}  // namespace stablereg

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "stablereg/stable_model.hpp"

namespace stablereg {

/// Strictly increasing, strictly positive evaluation points; at least 2.
class TGrid {
 public:
  explicit TGrid(std::vector<double> points);

  /// t_k = first + step * (k - 1), k = 1..count.
  static TGrid arithmetic(double first, double step, std::size_t count);
  /// `count` equally spaced points from lo to hi inclusive.
  static TGrid uniform(double lo, double hi, std::size_t count);
  /// t_k = pi k / 25, k = 1..count.
  static TGrid koutrouvelis(std::size_t count);

  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t k) const { return points_[k]; }

 private:
  std::vector<double> points_;
};

/// Regression pairs (omega_k, y_k) with omega_k = log t_k and
/// y_k = log(-log |phi_n(t_k)|^2).
struct RegressionData {
  std::vector<double> omega;
  std::vector<double> y;

  RegressionData() = default;
  RegressionData(std::vector<double> omega_in, std::vector<double> y_in);

  std::size_t size() const noexcept { return y.size(); }
};

/// |phi|^2 outside [kModulusEpsilon, 1 - kModulusEpsilon] is degenerate.
inline constexpr double kModulusEpsilon = 1e-12;

std::complex<double> ecf_at(std::span<const double> values, double t) noexcept;
inline std::complex<double> ecf_at(const Sample& sample, double t) noexcept {
  return ecf_at(sample.values(), t);
}

/// |phi_n(t_k)|^2 for every grid point.
std::vector<double> ecf_modulus_sq(std::span<const double> values, const TGrid& grid);

/// Double-log transform of squared moduli. Entry k of `modulus_sq` belongs to
/// grid point k. Throws DegenerateECF naming the offending t.
RegressionData transform_moduli(std::span<const double> modulus_sq, const TGrid& grid);

RegressionData transform_grid(std::span<const double> values, const TGrid& grid);
inline RegressionData transform_grid(const Sample& sample, const TGrid& grid) {
  return transform_grid(sample.values(), grid);
}

/// Noiseless counterpart: the transform applied to the theoretical moduli.
RegressionData theoretical_regression_data(const StableParams& params, const TGrid& grid);

}  // namespace stablereg

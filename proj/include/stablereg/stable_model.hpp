#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stablereg/rng.hpp"

namespace stablereg {

/// Four-parameter stable law with characteristic function
///
///   log phi(t) = -sigma^a |t|^a (1 - i beta sign(t) tan(pi a / 2)) + i mu t,  a != 1
///   log phi(t) = -sigma |t| (1 + i beta sign(t) (2/pi) log|t|) + i mu t,      a == 1
///
/// i.e. the S1 parameterization. Construction validates the ranges.
class StableParams {
 public:
  StableParams(double alpha, double sigma, double beta = 0.0, double mu = 0.0);

  double alpha() const noexcept { return alpha_; }
  double sigma() const noexcept { return sigma_; }
  double beta() const noexcept { return beta_; }
  double mu() const noexcept { return mu_; }

 private:
  double alpha_;
  double sigma_;
  double beta_;
  double mu_;
};

/// I.i.d. real observations; n >= 2 and every entry finite.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// |phi(t)|^2 = exp(-2 sigma^alpha |t|^alpha).
double theoretical_cf_modulus_sq(const StableParams& params, double t) noexcept;

/// One variate from the Chambers-Mallows-Stuck construction.
double draw_stable(const StableParams& params, StreamRng& rng);

/// n variates from the stream keyed by `seed`.
std::vector<double> sample_stable_values(const StableParams& params,
                                         std::size_t n, std::uint64_t seed);

/// n variates from an already-derived stream.
std::vector<double> sample_stable_values(const StableParams& params,
                                         std::size_t n, StreamRng& rng);

/// Wraps sample_stable_values in a validated Sample (requires n >= 2).
Sample sample_stable(const StableParams& params, std::size_t n,
                     std::uint64_t seed);

}  // namespace stablereg

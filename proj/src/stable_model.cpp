#include "stablereg/stable_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "stablereg/error.hpp"

namespace stablereg {

namespace {

[[noreturn]] void reject(const std::string& msg) {
  throw Error(ErrorKind::InvalidParameter, msg);
}

}  // namespace

StableParams::StableParams(double alpha, double sigma, double beta, double mu)
    : alpha_(alpha), sigma_(sigma), beta_(beta), mu_(mu) {
  if (!(alpha > 0.0 && alpha <= 2.0)) reject("alpha must be in (0, 2]");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) reject("sigma must be > 0");
  if (!(beta >= -1.0 && beta <= 1.0)) reject("beta must be in [-1, 1]");
  if (!std::isfinite(mu)) reject("mu must be finite");
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorKind::SampleTooSmall, "sample needs at least 2 values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream os;
      os << "sample value at index " << i << " is not finite";
      throw Error(ErrorKind::InvalidParameter, os.str());
    }
  }
}

double theoretical_cf_modulus_sq(const StableParams& params, double t) noexcept {
  const double a = params.alpha();
  return std::exp(-2.0 * std::pow(params.sigma(), a) * std::pow(std::abs(t), a));
}

// Chambers, Mallows & Stuck (1976) in the form given by Weron (1996), which
// produces S1 variates directly: for a != 1 the output is sigma * X + mu,
// for a == 1 the extra (2/pi) beta sigma log(sigma) shift is required because
// scaling does not commute with the log term.
double draw_stable(const StableParams& params, StreamRng& rng) {
  using std::numbers::pi;
  const double a = params.alpha();
  const double b = params.beta();
  const double v = pi * (rng.uniform_open() - 0.5);
  const double w = -std::log(rng.uniform_open());

  double x;
  if (a == 1.0) {
    const double half_pi_bv = 0.5 * pi + b * v;
    x = (2.0 / pi) *
        (half_pi_bv * std::tan(v) -
         b * std::log((0.5 * pi * w * std::cos(v)) / half_pi_bv));
    x = params.sigma() * x + (2.0 / pi) * b * params.sigma() * std::log(params.sigma()) +
        params.mu();
  } else {
    const double tan_term = b * std::tan(0.5 * pi * a);
    const double shift = std::atan(tan_term) / a;
    const double scale = std::pow(1.0 + tan_term * tan_term, 1.0 / (2.0 * a));
    const double av = a * (v + shift);
    x = scale * std::sin(av) / std::pow(std::cos(v), 1.0 / a) *
        std::pow(std::cos(v - av) / w, (1.0 - a) / a);
    x = params.sigma() * x + params.mu();
  }
  if (std::isnan(x)) {
    throw Error(ErrorKind::Internal, "stable generator produced NaN");
  }
  return x;
}

std::vector<double> sample_stable_values(const StableParams& params,
                                         std::size_t n, StreamRng& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "n must be >= 1");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw_stable(params, rng));
  return out;
}

std::vector<double> sample_stable_values(const StableParams& params,
                                         std::size_t n, std::uint64_t seed) {
  StreamRng rng = StreamRng::derive(seed, {});
  return sample_stable_values(params, n, rng);
}

Sample sample_stable(const StableParams& params, std::size_t n,
                     std::uint64_t seed) {
  return Sample(sample_stable_values(params, n, seed));
}

}  // namespace stablereg

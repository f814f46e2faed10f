#include "stablereg/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "stablereg/error.hpp"
#include "stablereg/parallel.hpp"
#include "stablereg/regression.hpp"
#include "stablereg/rng.hpp"
#include "stablereg/standardization.hpp"

namespace stablereg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool degenerate(double m2) { return !(m2 >= kModulusEpsilon && m2 <= 1.0 - kModulusEpsilon); }

double mean_of_finite(std::span<const double> v, std::size_t& failures) {
  double sum = 0.0;
  std::size_t count = 0;
  for (double x : v) {
    if (std::isnan(x)) {
      ++failures;
    } else {
      sum += x;
      ++count;
    }
  }
  return count == 0 ? kNaN : sum / static_cast<double>(count);
}

}  // namespace

ModuliSource simulated_moduli(const StableParams& params, std::size_t n, std::uint64_t seed,
                              bool standardized) {
  return [params, n, seed, standardized](std::size_t rep, const TGrid& grid) {
    StreamRng rng = StreamRng::derive(seed, {0, rep});
    std::vector<double> x = sample_stable_values(params, n, rng);
    if (standardized) x = standardize(x).values;
    return ecf_modulus_sq(x, grid);
  };
}

ModuliSource theoretical_moduli(const StableParams& params) {
  return [params](std::size_t, const TGrid& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid.points()) out.push_back(theoretical_cf_modulus_sq(params, t));
    return out;
  };
}

std::vector<VariancePoint> residual_variance_profile(const ModuliSource& source,
                                                     const StableParams& params,
                                                     std::size_t replications,
                                                     const TGrid& grid, ResidualLine line,
                                                     unsigned threads) {
  if (replications < 2) {
    throw Error(ErrorKind::InvalidParameter, "residual variance needs M >= 2");
  }
  const std::size_t kpts = grid.size();
  // Layout: [replication][t]; NaN marks a dropped residual.
  std::vector<double> resid(replications * kpts, kNaN);
  const double a = params.alpha();
  const double intercept = std::log(2.0 * std::pow(params.sigma(), a));

  parallel_for(replications, threads, [&](std::size_t r) {
    const std::vector<double> m2 = source(r, grid);
    double* row = resid.data() + r * kpts;
    if (line == ResidualLine::True) {
      for (std::size_t k = 0; k < kpts; ++k) {
        if (degenerate(m2[k])) continue;
        row[k] = std::log(-std::log(m2[k])) - intercept - a * std::log(grid[k]);
      }
      return;
    }
    try {
      const RegressionData data = transform_moduli(m2, grid);
      const LineFit fit = ols_fit(data);
      for (std::size_t k = 0; k < kpts; ++k) {
        row[k] = data.y[k] - fit.intercept - fit.slope * data.omega[k];
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateECF) throw;
    }
  });

  std::vector<VariancePoint> out(kpts);
  for (std::size_t k = 0; k < kpts; ++k) {
    VariancePoint& p = out[k];
    p.t = grid[k];
    double sum = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
      const double e = resid[r * kpts + k];
      if (std::isnan(e)) {
        ++p.dropped;
      } else {
        sum += e;
        ++p.used;
      }
    }
    if (p.used < 2) {
      p.variance = kNaN;
      continue;
    }
    const double mean = sum / static_cast<double>(p.used);
    double ss = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
      const double e = resid[r * kpts + k];
      if (!std::isnan(e)) ss += (e - mean) * (e - mean);
    }
    p.variance = ss / static_cast<double>(p.used - 1);
  }
  return out;
}

std::vector<VariancePoint> residual_variance_profile(const StableParams& params, std::size_t n,
                                                     std::size_t replications,
                                                     const TGrid& grid, bool use_true_line,
                                                     std::uint64_t seed, unsigned threads) {
  const ModuliSource source = simulated_moduli(params, n, seed, !use_true_line);
  return residual_variance_profile(source, params, replications, grid,
                                   use_true_line ? ResidualLine::True : ResidualLine::Estimated,
                                   threads);
}

std::vector<double> regression_residuals(std::span<const double> values, const TGrid& grid) {
  const StandardizedSample z = standardize(values);
  const RegressionData data = transform_grid(z.values, grid);
  const LineFit fit = ols_fit(data);
  std::vector<double> e(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    e[k] = data.y[k] - fit.intercept - fit.slope * data.omega[k];
  }
  return e;
}

std::vector<double> residual_acf(std::span<const double> residuals, std::size_t max_lag) {
  const std::size_t n = residuals.size();
  if (n <= max_lag) {
    throw Error(ErrorKind::InvalidParameter, "ACF needs more observations than max_lag");
  }
  double mean = 0.0;
  for (double e : residuals) mean += e;
  mean /= static_cast<double>(n);
  double denom = 0.0;
  for (double e : residuals) denom += (e - mean) * (e - mean);
  if (!(denom > 0.0)) throw Error(ErrorKind::ZeroVariance, "residuals have zero variance");

  std::vector<double> acf(max_lag + 1);
  acf[0] = 1.0;
  for (std::size_t h = 1; h <= max_lag; ++h) {
    double num = 0.0;
    for (std::size_t k = 0; k + h < n; ++k) {
      num += (residuals[k] - mean) * (residuals[k + h] - mean);
    }
    acf[h] = num / denom;
  }
  return acf;
}

std::vector<KSensitivityPoint> k_sensitivity_curve(const ModuliSource& source,
                                                   std::size_t replications,
                                                   std::span<const std::size_t> k_range,
                                                   unsigned threads) {
  for (std::size_t k : k_range) {
    if (k < 2) throw Error(ErrorKind::InvalidParameter, "every K must be >= 2");
  }
  if (replications < 1) throw Error(ErrorKind::InvalidParameter, "M must be >= 1");
  // The moduli are of already-standardized data, so the scale is 1.
  const Standardization unit{};
  std::vector<KSensitivityPoint> out;
  out.reserve(k_range.size());
  for (std::size_t k : k_range) {
    const TGrid kout_grid = TGrid::koutrouvelis(k);
    const TGrid lad_grid = TGrid::uniform(0.1, 1.0, k);
    std::vector<double> kout(replications, kNaN);
    std::vector<double> lad(replications, kNaN);
    parallel_for(replications, threads, [&](std::size_t r) {
      try {
        kout[r] = estimate_from_moduli(Method::Koutrouvelis, source(r, kout_grid), kout_grid,
                                       unit)
                      .alpha_hat;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Internal) throw;
      }
      try {
        lad[r] = estimate_from_moduli(Method::Lad, source(r, lad_grid), lad_grid, unit).alpha_hat;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Internal) throw;
      }
    });
    KSensitivityPoint p;
    p.k = k;
    p.mean_alpha_koutrouvelis = mean_of_finite(kout, p.failures_koutrouvelis);
    p.mean_alpha_lad = mean_of_finite(lad, p.failures_lad);
    out.push_back(p);
  }
  return out;
}

std::vector<KSensitivityPoint> k_sensitivity_curve(double alpha, std::size_t n,
                                                   std::size_t replications,
                                                   std::span<const std::size_t> k_range,
                                                   std::uint64_t seed, unsigned threads) {
  const StableParams params(alpha, 1.0);
  return k_sensitivity_curve(simulated_moduli(params, n, seed, true), replications, k_range,
                             threads);
}

}  // namespace stablereg

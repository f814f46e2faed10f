#include "stablereg/regression.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stablereg/error.hpp"

namespace stablereg {

LineFit weighted_ls_fit(const RegressionData& data, std::span<const double> weights) {
  const std::size_t k = data.size();
  if (k < 2) throw Error(ErrorKind::SingularDesign, "line fit needs at least 2 points");
  if (weights.size() != k) {
    throw Error(ErrorKind::InvalidParameter, "one weight per observation required");
  }
  // Centred on the weighted means, the 2x2 normal equations reduce to one
  // division.
  double sw = 0.0, swx = 0.0, swy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sw += weights[i];
    swx += weights[i] * data.omega[i];
    swy += weights[i] * data.y[i];
  }
  const double xbar = swx / sw;
  const double ybar = swy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double dx = data.omega[i] - xbar;
    sxx += weights[i] * dx * dx;
    sxy += weights[i] * dx * (data.y[i] - ybar);
  }
  const auto [lo, hi] = std::minmax_element(data.omega.begin(), data.omega.end());
  if (*lo == *hi || !(sxx > 0.0)) {
    throw Error(ErrorKind::SingularDesign, "all omega values are equal");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  fit.iterations = 0;
  fit.converged = true;
  return fit;
}

double lad_objective(const RegressionData& data, const LineFit& fit) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    s += std::abs(data.y[i] - fit.intercept - fit.slope * data.omega[i]);
  }
  return s;
}

double ls_objective(const RegressionData& data, const LineFit& fit) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double e = data.y[i] - fit.intercept - fit.slope * data.omega[i];
    s += e * e;
  }
  return s;
}

LineFit ols_fit(const RegressionData& data) {
  const std::vector<double> ones(data.size(), 1.0);
  LineFit fit = weighted_ls_fit(data, ones);
  fit.objective = ls_objective(data, fit);
  return fit;
}

LineFit lad_fit_irls(const RegressionData& data, const IrlsOptions& options) {
  if (!(options.tol > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "IRLS tolerance must be > 0");
  }
  LineFit current = ols_fit(data);
  LineFit best = current;
  best.objective = lad_objective(data, current);

  const std::size_t k = data.size();
  std::vector<double> weights(k);
  bool converged = false;
  std::size_t iter = 0;
  while (iter < options.max_iter) {
    ++iter;
    for (std::size_t i = 0; i < k; ++i) {
      const double e = data.y[i] - current.intercept - current.slope * data.omega[i];
      weights[i] = 1.0 / (1.0 + std::abs(e));
    }
    const LineFit next = weighted_ls_fit(data, weights);
    const double change = std::max(std::abs(next.intercept - current.intercept),
                                   std::abs(next.slope - current.slope));
    current = next;
    const double obj = lad_objective(data, current);
    if (obj < best.objective) {
      best.intercept = current.intercept;
      best.slope = current.slope;
      best.objective = obj;
    }
    if (change < options.tol) {
      converged = true;
      break;
    }
  }
  best.iterations = iter;
  best.converged = converged;
  return best;
}

}  // namespace stablereg

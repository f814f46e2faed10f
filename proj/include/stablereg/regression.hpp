#pragma once

#include <cstddef>
#include <span>

#include "stablereg/ecf.hpp"

namespace stablereg {

/// Fitted line y = intercept + slope * omega.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Sum |residual| for LAD fits, sum residual^2 for OLS fits.
  double objective = 0.0;
};

struct IrlsOptions {
  double tol = 1e-8;
  std::size_t max_iter = 200;
};

/// Weighted least squares with diagonal weights. Throws SingularDesign when
/// the weighted design has no spread in omega.
LineFit weighted_ls_fit(const RegressionData& data, std::span<const double> weights);

/// Closed-form ordinary least squares.
LineFit ols_fit(const RegressionData& data);

/// Least absolute deviation via iteratively reweighted least squares with
/// weights w_i = 1 / (1 + |e_i|), e_i the residuals of the previous iterate.
///
/// Starts from OLS and stops once the largest coefficient change is below
/// `tol`. The returned coefficients are those of the iterate with the lowest
/// L1 objective seen, so the result is never worse than the OLS start.
/// `converged` is false (and the best fit still returned) when `max_iter`
/// is exhausted.
LineFit lad_fit_irls(const RegressionData& data, const IrlsOptions& options = {});

/// Sum_k |y_k - intercept - slope * omega_k|.
double lad_objective(const RegressionData& data, const LineFit& fit) noexcept;

/// Sum_k (y_k - intercept - slope * omega_k)^2.
double ls_objective(const RegressionData& data, const LineFit& fit) noexcept;

}  // namespace stablereg

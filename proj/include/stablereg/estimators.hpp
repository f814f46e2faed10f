#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "stablereg/ecf.hpp"
#include "stablereg/regression.hpp"
#include "stablereg/standardization.hpp"

namespace stablereg {

enum class Method {
  Lad,             // IRLS LAD on 20 points starting at 0.1 with step 0.05
  KogonWilliams,   // OLS on {0.1, 0.2, ..., 1.0}
  LsMidInterval,   // OLS on 10 uniform points in [0.5, 1.0]
  Koutrouvelis,    // OLS on pi k / 25, k = 1..K
};

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// How the number of Koutrouvelis grid points is chosen.
class KSelection {
 public:
  enum class Mode { Fixed, OracleTrueAlpha, McCullochInitial };

  static KSelection fixed(std::size_t k);
  static KSelection oracle(double true_alpha);
  static KSelection mcculloch() { return KSelection(Mode::McCullochInitial, 0, 0.0); }

  /// Parses "fixed:<K>", "oracle:<alpha>" or "mcculloch".
  static KSelection parse(std::string_view text);

  Mode mode() const noexcept { return mode_; }
  std::size_t fixed_k() const noexcept { return k_; }
  double true_alpha() const noexcept { return alpha_; }
  std::string to_string() const;

 private:
  KSelection(Mode mode, std::size_t k, double alpha) : mode_(mode), k_(k), alpha_(alpha) {}

  Mode mode_;
  std::size_t k_;
  double alpha_;
};

/// Entry of the Koutrouvelis (1980) optimal-K table.
struct ResolvedK {
  std::size_t k = 0;
  /// (alpha, n) fell outside the tabulated rectangle and was clamped.
  bool out_of_range = false;
};

/// Optimal number of pi k / 25 points for (alpha, n), interpolated
/// bilinearly between table nodes and rounded to the nearest integer.
ResolvedK koutrouvelis_optimal_k(double alpha, std::size_t n);

enum class LadGrid {
  Printed,  // t_k = 0.1 + 0.05 (k - 1), k = 1..20, last point 1.05
  Capped,   // 20 uniform points on [0.1, 1.0]
};

struct EstimatorOptions {
  LadGrid lad_grid = LadGrid::Printed;
  StandardizationMethod kogon_williams_standardization = StandardizationMethod::McCulloch;
  KSelection k_selection = KSelection::mcculloch();
  IrlsOptions irls{};
};

struct Estimate {
  double alpha_hat = 0.0;
  double sigma_hat = 0.0;
  Method method = Method::Lad;
  TGrid grid;
  LineFit fit;
  Standardization standardization;
  /// Koutrouvelis only: the K used and whether the table lookup was clamped.
  std::optional<ResolvedK> resolved_k;
  /// McCulloch initial estimate fell outside the tabulated quantile ratios.
  bool mcculloch_out_of_range = false;
};

/// Smallest sample the estimators accept.
inline constexpr std::size_t kMinSampleSize = 10;

TGrid lad_grid(LadGrid variant = LadGrid::Printed);
TGrid kogon_williams_grid();
TGrid ls_mid_interval_grid();

/// sigma = (exp(m) / 2)^(1 / alpha); throws NonPositiveAlpha for alpha <= 0.
double sigma_from_intercept(double intercept, double alpha);

/// Shared back end: fits squared moduli observed on `grid` for data that was
/// standardized by `standardization`, and maps the line back to (alpha, sigma).
/// Feeding theoretical moduli here gives the noiseless estimator.
Estimate estimate_from_moduli(Method method, std::span<const double> modulus_sq,
                              const TGrid& grid, const Standardization& standardization,
                              const IrlsOptions& irls = {});

Estimate estimate_lad(std::span<const double> values, const EstimatorOptions& options = {});
Estimate estimate_kogon_williams(std::span<const double> values,
                                 const EstimatorOptions& options = {});
Estimate estimate_ls_mid_interval(std::span<const double> values,
                                  const EstimatorOptions& options = {});
Estimate estimate_koutrouvelis(std::span<const double> values, const KSelection& k_selection,
                               const EstimatorOptions& options = {});

/// Dispatches on `method`; Koutrouvelis uses options.k_selection.
Estimate estimate(Method method, std::span<const double> values,
                  const EstimatorOptions& options = {});

}  // namespace stablereg

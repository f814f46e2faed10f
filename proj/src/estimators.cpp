#include "stablereg/estimators.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "stablereg/error.hpp"

namespace stablereg {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Lad: return "lad";
    case Method::KogonWilliams: return "kw";
    case Method::LsMidInterval: return "ls-mid";
    case Method::Koutrouvelis: return "koutrouvelis";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "lad") return Method::Lad;
  if (name == "kw") return Method::KogonWilliams;
  if (name == "ls-mid") return Method::LsMidInterval;
  if (name == "koutrouvelis") return Method::Koutrouvelis;
  return std::nullopt;
}

KSelection KSelection::fixed(std::size_t k) {
  if (k < 2) throw Error(ErrorKind::InvalidParameter, "fixed K must be >= 2");
  return KSelection(Mode::Fixed, k, 0.0);
}

KSelection KSelection::oracle(double true_alpha) {
  if (!(true_alpha > 0.0 && true_alpha <= 2.0)) {
    throw Error(ErrorKind::InvalidParameter, "oracle alpha must be in (0, 2]");
  }
  return KSelection(Mode::OracleTrueAlpha, 0, true_alpha);
}

KSelection KSelection::parse(std::string_view text) {
  auto bad = [&]() -> Error {
    return Error(ErrorKind::InvalidParameter,
                 "k-mode must be fixed:<K>, oracle:<alpha> or mcculloch, got '" +
                     std::string(text) + "'");
  };
  if (text == "mcculloch") return mcculloch();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw bad();
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  if (head == "fixed") {
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) throw bad();
    return fixed(k);
  }
  if (head == "oracle") {
    double a = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), a);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) throw bad();
    return oracle(a);
  }
  throw bad();
}

std::string KSelection::to_string() const {
  std::ostringstream os;
  switch (mode_) {
    case Mode::Fixed: os << "fixed:" << k_; break;
    case Mode::OracleTrueAlpha: os << "oracle:" << alpha_; break;
    case Mode::McCullochInitial: os << "mcculloch"; break;
  }
  return os.str();
}

namespace {

// Koutrouvelis (1980), Table 1: optimal K by alpha (rows) and n (columns).
constexpr std::array<double, 8> kTableAlpha = {0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.9};
constexpr std::array<double, 3> kTableN = {200.0, 800.0, 1600.0};
constexpr double kTableK[8][3] = {
    {134, 124, 118},  // 0.3
    {86, 68, 56},     // 0.5
    {30, 24, 20},     // 0.7
    {28, 22, 18},     // 0.9
    {24, 18, 15},     // 1.1
    {22, 16, 14},     // 1.3
    {11, 11, 11},     // 1.5
    {9, 9, 9},        // 1.9
};

template <std::size_t N>
std::pair<std::size_t, double> locate(const std::array<double, N>& axis, double x, bool& clamped) {
  if (x < axis.front()) {
    clamped = true;
    return {0, 0.0};
  }
  if (x > axis.back()) {
    clamped = true;
    return {N - 2, 1.0};
  }
  std::size_t hi = 1;
  while (hi < N - 1 && axis[hi] < x) ++hi;
  return {hi - 1, (x - axis[hi - 1]) / (axis[hi] - axis[hi - 1])};
}

void require_sample_size(std::span<const double> values) {
  if (values.size() < kMinSampleSize) {
    std::ostringstream os;
    os << "sample too small: n = " << values.size() << ", estimators need n >= "
       << kMinSampleSize;
    throw Error(ErrorKind::SampleTooSmall, os.str());
  }
}

StandardizedSample with_record(std::span<const double> values, const Standardization& rec) {
  StandardizedSample z;
  z.record = rec;
  z.values.reserve(values.size());
  for (double x : values) z.values.push_back((x - rec.location) / rec.scale);
  return z;
}

Estimate run_pipeline(Method method, std::span<const double> values, const TGrid& grid,
                      StandardizationMethod standardization, const IrlsOptions& irls) {
  require_sample_size(values);
  if (standardization == StandardizationMethod::FamaRoll) {
    const StandardizedSample z = standardize(values);
    return estimate_from_moduli(method, ecf_modulus_sq(z.values, grid), grid, z.record, irls);
  }
  const McCullochEstimate init = mcculloch_initial(values);
  const StandardizedSample z =
      with_record(values, {init.zeta, init.sigma, StandardizationMethod::McCulloch});
  Estimate est =
      estimate_from_moduli(method, ecf_modulus_sq(z.values, grid), grid, z.record, irls);
  est.mcculloch_out_of_range = init.out_of_range;
  return est;
}

}  // namespace

ResolvedK koutrouvelis_optimal_k(double alpha, std::size_t n) {
  ResolvedK out;
  const auto [ia, fa] = locate(kTableAlpha, alpha, out.out_of_range);
  const auto [in, fn] = locate(kTableN, static_cast<double>(n), out.out_of_range);
  const double top = kTableK[ia][in] + fn * (kTableK[ia][in + 1] - kTableK[ia][in]);
  const double bottom =
      kTableK[ia + 1][in] + fn * (kTableK[ia + 1][in + 1] - kTableK[ia + 1][in]);
  const double k = top + fa * (bottom - top);
  out.k = static_cast<std::size_t>(std::lround(k));
  return out;
}

TGrid lad_grid(LadGrid variant) {
  return variant == LadGrid::Printed ? TGrid::arithmetic(0.1, 0.05, 20)
                                     : TGrid::uniform(0.1, 1.0, 20);
}

TGrid kogon_williams_grid() { return TGrid::arithmetic(0.1, 0.1, 10); }

TGrid ls_mid_interval_grid() { return TGrid::uniform(0.5, 1.0, 10); }

double sigma_from_intercept(double intercept, double alpha) {
  if (!(alpha > 0.0)) {
    std::ostringstream os;
    os << "estimated alpha " << alpha << " is not positive";
    throw Error(ErrorKind::NonPositiveAlpha, os.str());
  }
  return std::pow(std::exp(intercept) / 2.0, 1.0 / alpha);
}

Estimate estimate_from_moduli(Method method, std::span<const double> modulus_sq,
                              const TGrid& grid, const Standardization& standardization,
                              const IrlsOptions& irls) {
  const RegressionData data = transform_moduli(modulus_sq, grid);
  const LineFit fit = method == Method::Lad ? lad_fit_irls(data, irls) : ols_fit(data);
  // No clamping: slopes above 2 are reported as they are.
  return Estimate{
      .alpha_hat = fit.slope,
      .sigma_hat = sigma_from_intercept(fit.intercept, fit.slope) * standardization.scale,
      .method = method,
      .grid = grid,
      .fit = fit,
      .standardization = standardization,
      .resolved_k = std::nullopt,
      .mcculloch_out_of_range = false,
  };
}

Estimate estimate_lad(std::span<const double> values, const EstimatorOptions& options) {
  return run_pipeline(Method::Lad, values, lad_grid(options.lad_grid),
                      StandardizationMethod::FamaRoll, options.irls);
}

Estimate estimate_kogon_williams(std::span<const double> values, const EstimatorOptions& options) {
  return run_pipeline(Method::KogonWilliams, values, kogon_williams_grid(),
                      options.kogon_williams_standardization, options.irls);
}

Estimate estimate_ls_mid_interval(std::span<const double> values,
                                  const EstimatorOptions& options) {
  return run_pipeline(Method::LsMidInterval, values, ls_mid_interval_grid(),
                      StandardizationMethod::FamaRoll, options.irls);
}

Estimate estimate_koutrouvelis(std::span<const double> values, const KSelection& k_selection,
                               const EstimatorOptions& options) {
  require_sample_size(values);
  ResolvedK resolved;
  StandardizedSample z;
  bool mc_out_of_range = false;
  switch (k_selection.mode()) {
    case KSelection::Mode::Fixed:
      resolved.k = k_selection.fixed_k();
      z = standardize(values);
      break;
    case KSelection::Mode::OracleTrueAlpha:
      resolved = koutrouvelis_optimal_k(k_selection.true_alpha(), values.size());
      z = standardize(values);
      break;
    case KSelection::Mode::McCullochInitial: {
      const McCullochEstimate init = mcculloch_initial(values);
      mc_out_of_range = init.out_of_range;
      resolved = koutrouvelis_optimal_k(init.alpha, values.size());
      z = with_record(values, {init.zeta, init.sigma, StandardizationMethod::McCulloch});
      break;
    }
  }
  const TGrid grid = TGrid::koutrouvelis(resolved.k);
  Estimate est = estimate_from_moduli(Method::Koutrouvelis, ecf_modulus_sq(z.values, grid),
                                      grid, z.record, options.irls);
  est.resolved_k = resolved;
  est.mcculloch_out_of_range = mc_out_of_range;
  return est;
}

Estimate estimate(Method method, std::span<const double> values,
                  const EstimatorOptions& options) {
  switch (method) {
    case Method::Lad: return estimate_lad(values, options);
    case Method::KogonWilliams: return estimate_kogon_williams(values, options);
    case Method::LsMidInterval: return estimate_ls_mid_interval(values, options);
    case Method::Koutrouvelis: return estimate_koutrouvelis(values, options.k_selection, options);
  }
  throw Error(ErrorKind::InvalidParameter, "unknown estimation method");
}

}  // namespace stablereg

#include "stablereg/standardization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stablereg/error.hpp"

namespace stablereg {

double quantile_sorted(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 0) throw Error(ErrorKind::InvalidParameter, "quantile of empty data");
  // 1-based fractional position h with order statistic j at p = (j - 0.5)/n.
  const double h = static_cast<double>(n) * p + 0.5;
  if (h <= 1.0) return sorted.front();
  if (h >= static_cast<double>(n)) return sorted.back();
  const double lower = std::floor(h);
  const double frac = h - lower;
  const auto j = static_cast<std::size_t>(lower) - 1;
  return sorted[j] + frac * (sorted[j + 1] - sorted[j]);
}

double sample_quantile(std::span<const double> values, double p) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, p);
}

double trimmed_mean(std::span<const double> values, double trim) {
  if (!(trim >= 0.0 && trim < 0.5)) {
    throw Error(ErrorKind::InvalidParameter, "trim fraction must be in [0, 0.5)");
  }
  const std::size_t n = values.size();
  const auto cut = static_cast<std::size_t>(std::floor(trim * static_cast<double>(n)));
  if (n == 0 || 2 * cut >= n) {
    throw Error(ErrorKind::EmptyAfterTrim, "trimming removes every observation");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (std::size_t i = cut; i < n - cut; ++i) sum += sorted[i];
  return sum / static_cast<double>(n - 2 * cut);
}

namespace {

constexpr double kFamaRollDivisor = 1.654;
constexpr double kTrim = 0.25;

double fama_roll_from_sorted(std::span<const double> sorted) {
  if (sorted.size() < 2) {
    throw Error(ErrorKind::SampleTooSmall, "Fama-Roll scale needs at least 2 values");
  }
  const double q72 = quantile_sorted(sorted, 0.72);
  const double q28 = quantile_sorted(sorted, 0.28);
  if (!(q72 > q28)) {
    throw Error(ErrorKind::ZeroSpread, "quantiles q(0.28) and q(0.72) coincide");
  }
  return (q72 - q28) / kFamaRollDivisor;
}

StandardizedSample apply(std::span<const double> values, Standardization rec) {
  StandardizedSample out;
  out.record = rec;
  out.values.reserve(values.size());
  for (double x : values) out.values.push_back((x - rec.location) / rec.scale);
  return out;
}

}  // namespace

double fama_roll_scale(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return fama_roll_from_sorted(sorted);
}

std::string_view to_string(StandardizationMethod m) noexcept {
  return m == StandardizationMethod::FamaRoll ? "fama-roll" : "mcculloch";
}

StandardizedSample standardize(std::span<const double> values) {
  Standardization rec;
  rec.scale = fama_roll_scale(values);
  rec.location = trimmed_mean(values, kTrim);
  rec.method = StandardizationMethod::FamaRoll;
  return apply(values, rec);
}

StandardizedSample standardize_mcculloch(std::span<const double> values) {
  const McCullochEstimate est = mcculloch_initial(values);
  return apply(values, {est.zeta, est.sigma, StandardizationMethod::McCulloch});
}

StandardizedSample standardize(std::span<const double> values, StandardizationMethod method) {
  return method == StandardizationMethod::FamaRoll ? standardize(values)
                                                   : standardize_mcculloch(values);
}

// Tables III, IV, V and VII of McCulloch (1986), symmetric in beta.
namespace mcculloch_tables {
namespace {

constexpr std::array<double, 15> kNuAlpha = {2.439, 2.5, 2.6, 2.7, 2.8, 3.0, 3.2, 3.5,
                                             4.0,   5.0, 6.0, 8.0, 10., 15., 25.};
constexpr std::array<double, 7> kNuBeta = {0.0, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};

// Rows: nu_alpha; columns: nu_beta.
constexpr double kPsi1[15][7] = {
    {2.000, 2.000, 2.000, 2.000, 2.000, 2.000, 2.000},
    {1.916, 1.924, 1.924, 1.924, 1.924, 1.924, 1.924},
    {1.808, 1.813, 1.829, 1.829, 1.829, 1.829, 1.829},
    {1.729, 1.730, 1.737, 1.745, 1.745, 1.745, 1.745},
    {1.664, 1.663, 1.663, 1.668, 1.676, 1.676, 1.676},
    {1.563, 1.560, 1.553, 1.548, 1.547, 1.547, 1.547},
    {1.484, 1.480, 1.471, 1.460, 1.448, 1.438, 1.438},
    {1.391, 1.386, 1.378, 1.364, 1.337, 1.318, 1.318},
    {1.279, 1.273, 1.266, 1.250, 1.210, 1.184, 1.150},
    {1.128, 1.121, 1.114, 1.101, 1.067, 1.027, 0.973},
    {1.029, 1.021, 1.014, 1.004, 0.974, 0.935, 0.874},
    {0.896, 0.892, 0.884, 0.883, 0.855, 0.823, 0.769},
    {0.818, 0.812, 0.806, 0.801, 0.780, 0.756, 0.691},
    {0.698, 0.695, 0.692, 0.689, 0.676, 0.656, 0.597},
    {0.593, 0.590, 0.588, 0.586, 0.579, 0.563, 0.513},
};

constexpr double kPsi2[15][7] = {
    {0, 2.160, 1.000, 1.000, 1.000, 1.000, 1.000},
    {0, 1.592, 3.390, 1.000, 1.000, 1.000, 1.000},
    {0, 0.759, 1.800, 1.000, 1.000, 1.000, 1.000},
    {0, 0.482, 1.048, 1.694, 1.000, 1.000, 1.000},
    {0, 0.360, 0.760, 1.232, 2.229, 1.000, 1.000},
    {0, 0.253, 0.518, 0.823, 1.575, 1.000, 1.000},
    {0, 0.203, 0.410, 0.632, 1.244, 1.906, 1.000},
    {0, 0.165, 0.332, 0.499, 0.943, 1.560, 1.000},
    {0, 0.136, 0.271, 0.404, 0.689, 1.230, 2.195},
    {0, 0.109, 0.216, 0.323, 0.539, 0.827, 1.917},
    {0, 0.096, 0.190, 0.284, 0.472, 0.693, 1.759},
    {0, 0.082, 0.163, 0.243, 0.412, 0.601, 1.596},
    {0, 0.074, 0.147, 0.220, 0.377, 0.546, 1.482},
    {0, 0.064, 0.128, 0.191, 0.330, 0.478, 1.362},
    {0, 0.056, 0.112, 0.167, 0.285, 0.428, 1.274},
};

// Ascending alpha; columns: beta.
constexpr std::array<double, 16> kAlpha = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2,
                                           1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
constexpr std::array<double, 5> kBeta = {0.0, 0.25, 0.5, 0.75, 1.0};

constexpr double kPhi3[16][5] = {
    {2.588, 3.073, 4.534, 6.636, 9.144}, {2.337, 2.634, 3.542, 4.808, 6.247},
    {2.189, 2.392, 3.004, 3.844, 4.775}, {2.098, 2.244, 2.676, 3.265, 3.912},
    {2.040, 2.149, 2.461, 2.886, 3.356}, {2.000, 2.085, 2.311, 2.624, 2.973},
    {1.980, 2.040, 2.205, 2.435, 2.696}, {1.965, 2.007, 2.125, 2.294, 2.491},
    {1.955, 1.984, 2.067, 2.188, 2.333}, {1.946, 1.967, 2.022, 2.106, 2.211},
    {1.939, 1.952, 1.988, 2.045, 2.116}, {1.933, 1.940, 1.962, 1.997, 2.043},
    {1.927, 1.930, 1.943, 1.961, 1.987}, {1.921, 1.922, 1.927, 1.936, 1.947},
    {1.914, 1.915, 1.916, 1.918, 1.921}, {1.908, 1.908, 1.908, 1.908, 1.908},
};

constexpr double kPhi5[16][5] = {
    {0, -0.061, -0.279, -0.659, -1.198}, {0, -0.078, -0.272, -0.581, -0.997},
    {0, -0.089, -0.262, -0.520, -0.853}, {0, -0.096, -0.250, -0.469, -0.742},
    {0, -0.099, -0.237, -0.424, -0.652}, {0, -0.098, -0.223, -0.380, -0.576},
    {0, -0.095, -0.208, -0.346, -0.508}, {0, -0.090, -0.192, -0.310, -0.447},
    {0, -0.084, -0.173, -0.276, -0.390}, {0, -0.075, -0.154, -0.241, -0.335},
    {0, -0.066, -0.134, -0.206, -0.283}, {0, -0.056, -0.111, -0.170, -0.232},
    {0, -0.043, -0.088, -0.132, -0.179}, {0, -0.030, -0.061, -0.092, -0.123},
    {0, -0.017, -0.032, -0.049, -0.064}, {0, 0.000, 0.000, 0.000, 0.000},
};

struct Bracket {
  std::size_t lo;
  double frac;
};

// Clamped bracket of x in an ascending axis.
template <std::size_t N>
Bracket bracket(const std::array<double, N>& axis, double x) {
  if (x <= axis.front()) return {0, 0.0};
  if (x >= axis.back()) return {N - 2, 1.0};
  std::size_t hi = 1;
  while (axis[hi] < x) ++hi;
  return {hi - 1, (x - axis[hi - 1]) / (axis[hi] - axis[hi - 1])};
}

template <std::size_t R, std::size_t C>
double bilinear(const double (&table)[R][C], const std::array<double, R>& rows,
                const std::array<double, C>& cols, double r, double c) {
  const Bracket br = bracket(rows, r);
  const Bracket bc = bracket(cols, c);
  const double v00 = table[br.lo][bc.lo];
  const double v01 = table[br.lo][bc.lo + 1];
  const double v10 = table[br.lo + 1][bc.lo];
  const double v11 = table[br.lo + 1][bc.lo + 1];
  const double top = v00 + bc.frac * (v01 - v00);
  const double bottom = v10 + bc.frac * (v11 - v10);
  return top + br.frac * (bottom - top);
}

}  // namespace

double psi1(double nu_alpha, double nu_beta_abs) {
  return bilinear(kPsi1, kNuAlpha, kNuBeta, nu_alpha, nu_beta_abs);
}
double psi2(double nu_alpha, double nu_beta_abs) {
  return bilinear(kPsi2, kNuAlpha, kNuBeta, nu_alpha, nu_beta_abs);
}
double phi3(double alpha, double beta_abs) {
  return bilinear(kPhi3, kAlpha, kBeta, alpha, beta_abs);
}
double phi5(double alpha, double beta_abs) {
  return bilinear(kPhi5, kAlpha, kBeta, alpha, beta_abs);
}

}  // namespace mcculloch_tables

McCullochEstimate mcculloch_initial(std::span<const double> values) {
  namespace tab = mcculloch_tables;
  if (values.size() < 5) {
    throw Error(ErrorKind::SampleTooSmall, "McCulloch estimator needs at least 5 values");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double q05 = quantile_sorted(sorted, 0.05);
  const double q25 = quantile_sorted(sorted, 0.25);
  const double q50 = quantile_sorted(sorted, 0.50);
  const double q75 = quantile_sorted(sorted, 0.75);
  const double q95 = quantile_sorted(sorted, 0.95);
  if (!(q75 > q25)) {
    throw Error(ErrorKind::ZeroSpread, "quantiles q(0.25) and q(0.75) coincide");
  }

  McCullochEstimate est;
  const double nu_alpha = (q95 - q05) / (q75 - q25);
  double nu_beta = (q95 + q05 - 2.0 * q50) / (q95 - q05);
  if (std::abs(nu_beta) > 1.0) {
    nu_beta = std::copysign(1.0, nu_beta);
    est.out_of_range = true;
  }
  const double sign = nu_beta < 0.0 ? -1.0 : 1.0;

  if (nu_alpha < tab::kNuAlphaMin) {
    // Lighter tails than the Gaussian: alpha sits on the table boundary and
    // beta is not identified.
    est.alpha = 2.0;
    est.beta = 0.0;
    est.out_of_range = true;
  } else {
    if (nu_alpha > tab::kNuAlphaMax) est.out_of_range = true;
    est.alpha = std::clamp(tab::psi1(nu_alpha, std::abs(nu_beta)), tab::kAlphaMin, 2.0);
    est.beta = sign * std::clamp(tab::psi2(nu_alpha, std::abs(nu_beta)), 0.0, 1.0);
  }

  const double abs_beta = std::abs(est.beta);
  est.sigma = (q75 - q25) / tab::phi3(est.alpha, abs_beta);
  const double beta_sign = est.beta < 0.0 ? -1.0 : 1.0;
  est.zeta = q50 + est.sigma * beta_sign * tab::phi5(est.alpha, abs_beta);
  if (est.alpha == 1.0) {
    est.mu = est.zeta;
  } else {
    est.mu = est.zeta - est.beta * est.sigma * std::tan(0.5 * std::numbers::pi * est.alpha);
  }
  return est;
}

}  // namespace stablereg

#include "stablereg/ecf.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "stablereg/error.hpp"

namespace stablereg {

TGrid::TGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorKind::InvalidParameter, "t-grid needs at least 2 points");
  }
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const double t = points_[k];
    if (!std::isfinite(t) || t <= 0.0) {
      throw Error(ErrorKind::InvalidParameter, "t-grid points must be finite and > 0");
    }
    if (k > 0 && !(t > points_[k - 1])) {
      throw Error(ErrorKind::InvalidParameter, "t-grid must be strictly increasing");
    }
  }
}

TGrid TGrid::arithmetic(double first, double step, std::size_t count) {
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k) {
    pts[k] = first + step * static_cast<double>(k);
  }
  return TGrid(std::move(pts));
}

TGrid TGrid::uniform(double lo, double hi, std::size_t count) {
  if (count < 2) {
    throw Error(ErrorKind::InvalidParameter, "t-grid needs at least 2 points");
  }
  std::vector<double> pts(count);
  const double span = hi - lo;
  for (std::size_t k = 0; k < count; ++k) {
    pts[k] = lo + span * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  pts.back() = hi;
  return TGrid(std::move(pts));
}

TGrid TGrid::koutrouvelis(std::size_t count) {
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k) {
    pts[k] = std::numbers::pi * static_cast<double>(k + 1) / 25.0;
  }
  return TGrid(std::move(pts));
}

RegressionData::RegressionData(std::vector<double> omega_in, std::vector<double> y_in)
    : omega(std::move(omega_in)), y(std::move(y_in)) {
  if (omega.size() != y.size()) {
    throw Error(ErrorKind::InvalidParameter, "omega and y lengths differ");
  }
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (!std::isfinite(omega[k]) || !std::isfinite(y[k])) {
      throw Error(ErrorKind::InvalidParameter, "regression data must be finite");
    }
  }
}

std::complex<double> ecf_at(std::span<const double> values, double t) noexcept {
  double re = 0.0;
  double im = 0.0;
  for (double x : values) {
    const double arg = t * x;
    re += std::cos(arg);
    im += std::sin(arg);
  }
  const double n = static_cast<double>(values.size());
  return {re / n, im / n};
}

std::vector<double> ecf_modulus_sq(std::span<const double> values, const TGrid& grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid.points()) out.push_back(std::norm(ecf_at(values, t)));
  return out;
}

RegressionData transform_moduli(std::span<const double> modulus_sq, const TGrid& grid) {
  if (modulus_sq.size() != grid.size()) {
    throw Error(ErrorKind::InvalidParameter, "one modulus per grid point required");
  }
  std::vector<double> omega(grid.size());
  std::vector<double> y(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double m2 = modulus_sq[k];
    if (!(m2 >= kModulusEpsilon && m2 <= 1.0 - kModulusEpsilon)) {
      std::ostringstream os;
      os.precision(17);
      os << "degenerate ECF at t = " << grid[k] << ": |phi|^2 = " << m2;
      throw Error(ErrorKind::DegenerateECF, os.str());
    }
    omega[k] = std::log(grid[k]);
    y[k] = std::log(-std::log(m2));
  }
  return RegressionData(std::move(omega), std::move(y));
}

RegressionData transform_grid(std::span<const double> values, const TGrid& grid) {
  return transform_moduli(ecf_modulus_sq(values, grid), grid);
}

RegressionData theoretical_regression_data(const StableParams& params, const TGrid& grid) {
  std::vector<double> m2;
  m2.reserve(grid.size());
  for (double t : grid.points()) m2.push_back(theoretical_cf_modulus_sq(params, t));
  return transform_moduli(m2, grid);
}

}  // namespace stablereg

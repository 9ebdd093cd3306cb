#pragma once

#include <cmath>
#include <span>

#include "screwon/errors.hpp"

namespace screwon {

/// Result of a least-squares power-law fit y = prefactor * x^exponent.
struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
};

/// Least-squares line through (log x, log y). All inputs must be positive.
inline PowerLawFit fit_power_law(std::span<const double> xs,
                                 std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw DomainError("fit_power_law: size mismatch");
  if (xs.size() < 3) throw DomainError("fit_power_law: need at least 3 points");
  const std::size_t n = xs.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw DomainError("fit_power_law: inputs must be positive");
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(xs[i]) - mx, dy = std::log(ys[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("fit_power_law: degenerate abscissae");
  PowerLawFit f;
  f.exponent = sxy / sxx;
  f.prefactor = std::exp(my - f.exponent * mx);
  f.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

}  // namespace screwon

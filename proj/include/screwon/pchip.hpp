#pragma once

#include <cmath>
#include <vector>

#include "screwon/errors.hpp"

namespace screwon {

/// Fritsch-Carlson monotone piecewise-cubic interpolant. For monotone data the
/// interpolant is monotone, so it can be inverted segment by segment without
/// spurious extrema.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
      throw DomainError("MonotoneCubic: need >= 2 matched points");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw DomainError("MonotoneCubic: abscissae must increase");
    d_.resize(n);
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    // clamp endpoint slopes (Fritsch-Carlson)
    auto clamp_end = [](double& d, double del0, double del1) {
      if (del0 == 0.0)
        d = 0.0;
      else if (d * del0 < 0.0)
        d = 0.0;
      else if (del0 * del1 < 0.0 && std::fabs(d) > 3.0 * std::fabs(del0))
        d = 3.0 * del0;
    };
    clamp_end(d_[0], delta[0], n > 2 ? delta[1] : delta[0]);
    clamp_end(d_[n - 1], delta[n - 2], n > 2 ? delta[n - 3] : delta[n - 2]);
  }

  double operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
  }

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  double y_front() const { return y_.front(); }
  double y_back() const { return y_.back(); }

  /// Solve f(x) = target on increasing data by bisection within the bracketing
  /// segment; the interpolant is monotone there.
  double invert(double target) const {
    if (target < y_.front() || target > y_.back())
      throw DomainError("MonotoneCubic::invert: target outside data range");
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (y_[mid] <= target ? lo : hi) = mid;
    }
    double a = x_[lo], b = x_[hi];
    for (int it = 0; it < 200 && (b - a) > 1e-15 * (1.0 + std::fabs(a)); ++it) {
      const double mid = 0.5 * (a + b);
      ((*this)(mid) <= target ? a : b) = mid;
    }
    return 0.5 * (a + b);
  }

 private:
  std::size_t segment(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (x_[mid] <= x ? lo : hi) = mid;
    }
    return lo;
  }

  std::vector<double> x_, y_, d_;
};

}  // namespace screwon

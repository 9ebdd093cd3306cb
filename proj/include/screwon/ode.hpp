#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "screwon/errors.hpp"

namespace screwon {

/// Dormand-Prince 5(4) embedded pair with PI-free step control.
/// RHS signature: f(t, y, dydt).
template <std::size_t N>
class Dopri5 {
 public:
  using State = std::array<double, N>;

  struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0: choose automatically
    double max_step = std::numeric_limits<double>::infinity();
  };

  /// Integrate from t0 to t1 (t1 > t0 or t1 < t0). Calls observer(t, y) after
  /// every accepted step (and once at t0). Throws NumericalError when the step
  /// size underflows.
  template <typename F, typename Observer>
  static State integrate(F&& f, double t0, double t1, State y,
                         const Options& opts, Observer&& observer) {
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    double h = opts.initial_step != 0.0
                   ? std::fabs(opts.initial_step)
                   : std::min(std::fabs(t1 - t0) * 1e-3 + 1e-30, 1.0e-2);
    h = std::min(h, std::fabs(t1 - t0));
    observer(t, y);
    State k1;
    f(t, y, k1);
    while (dir * (t1 - t) > 0.0) {
      h = std::min(h, std::min(std::fabs(t1 - t), opts.max_step));
      if (h <= std::fabs(t) * 1e-14 + 1e-300)
        throw NumericalError("Dopri5: step size underflow (stiffness?) at t = " +
                             std::to_string(t));
      State k2, k3, k4, k5, k6, k7, ytmp, y5;
      const double hs = dir * h;

      for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
      f(t + c2 * hs, ytmp, k2);
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
      f(t + c3 * hs, ytmp, k3);
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      f(t + c4 * hs, ytmp, k4);
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                               a54 * k4[i]);
      f(t + c5 * hs, ytmp, k5);
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                               a64 * k4[i] + a65 * k5[i]);
      f(t + hs, ytmp, k6);
      for (std::size_t i = 0; i < N; ++i)
        y5[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                             b5 * k5[i] + b6 * k6[i]);
      f(t + hs, y5, k7);  // FSAL

      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                               e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc =
            opts.atol + opts.rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / static_cast<double>(N));

      if (err <= 1.0) {
        t += hs;
        y = y5;
        k1 = k7;
        observer(t, y);
      }
      const double fac =
          0.9 * std::pow(std::max(err, 1.0e-16), -0.2);
      h *= std::clamp(fac, 0.2, 5.0);
    }
    return y;
  }

  template <typename F>
  static State integrate(F&& f, double t0, double t1, const State& y0,
                         const Options& opts = {}) {
    return integrate(f, t0, t1, y0, opts, [](double, const State&) {});
  }

 private:
  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                          c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0,
                          b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                          b6 = 11.0 / 84.0;
  // y5 - y4 error weights
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                          e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                          e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
};

}  // namespace screwon

#pragma once

#include <algorithm>
#include <cmath>

#include "screwon/errors.hpp"

namespace screwon {

/// Modulus zeta of a complete elliptic integral. Note the convention: the
/// argument is the MODULUS zeta, not the parameter m = zeta^2 used by some
/// libraries. zeta -> 1 is rejected (K diverges logarithmically there).
struct EllipticModulus {
  double zeta = 0.0;
  double zeta2 = 0.0;

  explicit EllipticModulus(double z) : zeta(z), zeta2(z * z) {
    if (!(z >= 0.0)) throw DomainError("EllipticModulus: zeta must be >= 0");
    if (!(z < 1.0)) throw DomainError("EllipticModulus: zeta must be < 1");
  }
};

namespace carlson {

// Carlson symmetric forms by the duplication algorithm. The truncation
// thresholds put the series error below double roundoff.

inline double rf(double x, double y, double z) {
  constexpr double errtol = 1.0e-3;
  double xt = x, yt = y, zt = z;
  double mu, dx, dy, dz;
  do {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lm = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lm);
    yt = 0.25 * (yt + lm);
    zt = 0.25 * (zt + lm);
    mu = (xt + yt + zt) / 3.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
  } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) > errtol);
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

inline double rc(double x, double y) {
  constexpr double errtol = 1.0e-3;
  double xt = x, yt = y;
  double mu, s;
  do {
    const double lm = 2.0 * std::sqrt(xt) * std::sqrt(yt) + yt;
    xt = 0.25 * (xt + lm);
    yt = 0.25 * (yt + lm);
    mu = (xt + yt + yt) / 3.0;
    s = (yt - mu) / mu;
  } while (std::fabs(s) > errtol);
  return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) /
         std::sqrt(mu);
}

inline double rd(double x, double y, double z) {
  constexpr double errtol = 1.0e-3;
  double xt = x, yt = y, zt = z;
  double sum = 0.0, fac = 1.0;
  double mu, dx, dy, dz;
  do {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lm = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lm));
    fac *= 0.25;
    xt = 0.25 * (xt + lm);
    yt = 0.25 * (yt + lm);
    zt = 0.25 * (zt + lm);
    mu = 0.2 * (xt + yt + 3.0 * zt);
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
  } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) > errtol);
  const double ea = dx * dy, eb = dz * dz, ec = ea - eb, ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0,
                   c4 = 3.0 / 26.0, c5 = 0.25 * c3, c6 = 1.5 * c4;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
              dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
             (mu * std::sqrt(mu));
}

inline double rj(double x, double y, double z, double p) {
  constexpr double errtol = 1.0e-3;
  double xt = x, yt = y, zt = z, pt = p;
  double sum = 0.0, fac = 1.0;
  double mu, dx, dy, dz, dp;
  do {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lm = sx * (sy + sz) + sy * sz;
    const double alpha = pt * (sx + sy + sz) + sx * sy * sz;
    const double beta = pt * (pt + lm) * (pt + lm);
    sum += fac * rc(alpha * alpha, beta);
    fac *= 0.25;
    xt = 0.25 * (xt + lm);
    yt = 0.25 * (yt + lm);
    zt = 0.25 * (zt + lm);
    pt = 0.25 * (pt + lm);
    mu = 0.2 * (xt + yt + zt + 2.0 * pt);
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    dp = (mu - pt) / mu;
  } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz),
                     std::fabs(dp)}) > errtol);
  const double ea = dx * (dy + dz) + dy * dz, eb = dx * dy * dz;
  const double ec = dp * dp, ed = ea - 3.0 * ec;
  const double ee = eb + 2.0 * dp * (ea - ec);
  constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 3.0, c3 = 3.0 / 22.0,
                   c4 = 3.0 / 26.0, c5 = 0.75 * c3, c6 = 1.5 * c4,
                   c7 = 0.5 * c2, c8 = c3 + c3;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-c1 + c5 * ed - c6 * ee) +
              eb * (c7 + dp * (-c8 + dp * c4)) + dp * ea * (c2 - dp * c3) -
              c2 * dp * ec) /
             (mu * std::sqrt(mu));
}

}  // namespace carlson

/// K(zeta) = int_0^{pi/2} dtheta / sqrt(1 - zeta^2 sin^2 theta)
inline double ellip_K(const EllipticModulus& zm) {
  return carlson::rf(0.0, 1.0 - zm.zeta2, 1.0);
}
inline double ellip_K(double zeta) { return ellip_K(EllipticModulus(zeta)); }

/// E(zeta) = int_0^{pi/2} sqrt(1 - zeta^2 sin^2 theta) dtheta
inline double ellip_E(const EllipticModulus& zm) {
  const double y = 1.0 - zm.zeta2;
  return carlson::rf(0.0, y, 1.0) - (zm.zeta2 / 3.0) * carlson::rd(0.0, y, 1.0);
}
inline double ellip_E(double zeta) { return ellip_E(EllipticModulus(zeta)); }

/// Pi(n, zeta) = int_0^{pi/2} dtheta / [(1 - n sin^2 theta) sqrt(1 - zeta^2 sin^2 theta)]
/// Circular case only: characteristic n < 1 (n >= 1 puts the pole on the contour).
inline double ellip_Pi(double n, const EllipticModulus& zm) {
  if (!(n < 1.0)) throw DomainError("ellip_Pi: characteristic n must be < 1");
  const double y = 1.0 - zm.zeta2;
  return carlson::rf(0.0, y, 1.0) + (n / 3.0) * carlson::rj(0.0, y, 1.0, 1.0 - n);
}
inline double ellip_Pi(double n, double zeta) {
  return ellip_Pi(n, EllipticModulus(zeta));
}

}  // namespace screwon

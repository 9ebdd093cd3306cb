#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "screwon/elliptic.hpp"
#include "screwon/errors.hpp"
#include "screwon/params.hpp"
#include "screwon/pchip.hpp"
#include "screwon/polyroots.hpp"
#include "screwon/rootfind.hpp"
#include "screwon/spectrum.hpp"

namespace screwon {

/// The radial action in x = r^2 is S(E) = int_{b}^{a} dx/(2x) sqrt(Q(x)) with
///   Q(x) = E2 x - 2 mu (alpha x^2 + beta x^3) - p_theta^2,
///   E2   = 2 mu E - pz^2 - p_theta lambda k m - k^2 m^2 mu.
/// ActionProblem holds Q, its ordered real roots c <= b < a (the window [b, a]
/// is the classically allowed annulus) and the elliptic modulus
/// zeta = sqrt((a-b)/(a-c)).
struct ActionProblem {
  ModelParams params;
  double E0 = 0.0;
  std::array<double, 4> cubic{};  // Q coefficients, ascending powers
  double c = std::numeric_limits<double>::quiet_NaN();
  double b = 0.0;
  double a = 0.0;
  bool is_cubic = true;  // false in the lambda = 0 (quadratic) limit
  double zeta = 0.0;

  double eval_Q(double x) const {
    return ((cubic[3] * x + cubic[2]) * x + cubic[1]) * x + cubic[0];
  }
};

/// Minimum of V_eff(x) = alpha x + beta x^2 + p_theta^2/(2 mu x) over x > 0
/// plus the constant offsets; energies below this are classically forbidden.
inline double effective_potential_floor(const ModelParams& p) {
  p.require_spectral("effective_potential_floor");
  const auto [alpha, beta] = potential_coeffs(p);
  const double pt = p.p_theta();
  const double offset = p.pz * p.pz / (2.0 * p.mu) +
                        pt * p.lambda * p.k * p.m / (2.0 * p.mu) +
                        p.k * p.k * p.m * p.m / 2.0;
  double xs = 0.0;
  if (pt == 0.0) {
    if (alpha < 0.0 && beta > 0.0) xs = -alpha / (2.0 * beta);
  } else if (beta == 0.0) {
    xs = std::sqrt(pt * pt / (2.0 * p.mu * alpha));
  } else {
    // stationary point: 4 mu beta x^3 + 2 mu alpha x^2 - p_theta^2 = 0
    // (unique positive root)
    const auto rr = real_roots({-pt * pt, 0.0, 2.0 * p.mu * alpha, 4.0 * p.mu * beta});
    for (double r : rr)
      if (r > 0.0) xs = r;
  }
  double u = 0.0;
  if (xs > 0.0) u = alpha * xs + beta * xs * xs + pt * pt / (2.0 * p.mu * xs);
  return offset + u;
}

/// Locate the classically allowed window [b, a] at trial energy E0.
inline ActionProblem turning_points(const ModelParams& p, double E0) {
  p.require_spectral("turning_points");
  const auto [alpha, beta] = potential_coeffs(p);
  const double pt = p.p_theta();
  const double E2 = 2.0 * p.mu * E0 - p.pz * p.pz - pt * p.lambda * p.k * p.m -
                    p.k * p.k * p.m * p.m * p.mu;

  ActionProblem ap;
  ap.params = p;
  ap.E0 = E0;
  ap.cubic = {-pt * pt, E2, -2.0 * p.mu * alpha, -2.0 * p.mu * beta};
  ap.is_cubic = beta != 0.0;

  auto forbidden = [&](const char* why) {
    return ClassicallyForbiddenError(
        std::string("turning_points: ") + why + " (E0 = " + std::to_string(E0) +
            ", V_eff minimum = " + std::to_string(effective_potential_floor(p)) + ")",
        effective_potential_floor(p));
  };

  if (!ap.is_cubic) {
    // lambda = 0: Q is quadratic with alpha = k^2/2 > 0
    const double A = -2.0 * p.mu * alpha, B = E2, C = -pt * pt;
    const double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0 || B <= 0.0) throw forbidden("no classically allowed window");
    const double sq = std::sqrt(disc);
    ap.b = (B - sq) / (-2.0 * A);
    ap.a = (B + sq) / (-2.0 * A);
  } else if (pt == 0.0) {
    // Q = x (c1 + c2 x + c3 x^2); x = 0 is always a root
    const double A = ap.cubic[3], B = ap.cubic[2], C = ap.cubic[1];
    const double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0) throw forbidden("no classically allowed window");
    const double sq = std::sqrt(disc);
    double r1 = (-B - sq) / (2.0 * A), r2 = (-B + sq) / (2.0 * A);
    if (r1 > r2) std::swap(r1, r2);
    if (C > 0.0) {
      // E2 > 0: window starts at the origin, third root is negative
      ap.c = r1;
      ap.b = 0.0;
      ap.a = r2;
      if (ap.a <= 0.0) throw forbidden("no positive outer turning point");
    } else {
      // below the rim of a Mexican-hat well: window between positive roots
      ap.c = 0.0;
      ap.b = r1;
      ap.a = r2;
      if (!(ap.b > 0.0)) throw forbidden("no classically allowed window");
    }
  } else {
    const auto rr =
        real_roots({ap.cubic[0], ap.cubic[1], ap.cubic[2], ap.cubic[3]});
    if (rr.size() != 3) throw forbidden("turning-point cubic has complex roots");
    ap.c = rr[0];
    ap.b = rr[1];
    ap.a = rr[2];
    if (!(ap.a > 0.0) || !(ap.b > 0.0))
      throw forbidden("no positive classically allowed window");
  }

  const double span_scale = std::max({1.0, std::fabs(ap.a), std::fabs(ap.b)});
  if (std::fabs(ap.a - ap.b) <= 1e-12 * span_scale)
    throw DomainError("turning_points: degenerate turning points (a = b)");
  if (ap.is_cubic) {
    const double z2 = (ap.a - ap.b) / (ap.a - ap.c);
    ap.zeta = std::sqrt(z2);
  }

  // roots must actually solve Q at the advertised accuracy
  double qscale = std::fabs(ap.cubic[0]);
  for (int i = 1; i < 4; ++i)
    qscale = std::max(qscale, std::fabs(ap.cubic[i]) * std::pow(std::fabs(ap.a), i));
  for (double r : {ap.b, ap.a})
    if (std::fabs(ap.eval_Q(r)) > 1e-10 * qscale)
      throw NumericalError("turning_points: root residual exceeds tolerance");
  return ap;
}

/// S(E0) = int_b^a dx/(2x) sqrt(Q(x)) as the Appendix-style combination of
/// complete elliptic integrals. The four base integrals over
/// 1/sqrt((a-x)(x-b)(x-c)) with weights {1, x, x^2, 1/x} assemble Q/(2x).
inline double action_integral(const ActionProblem& ap) {
  const ModelParams& p = ap.params;
  if (ap.a == ap.b) return 0.0;

  if (!ap.is_cubic) {
    // lambda = 0 closed form
    const double E1 = ap.E0 - p.pz * p.pz / (2.0 * p.mu) - p.k * p.k * p.m * p.m / 2.0;
    return 0.5 * std::numbers::pi *
           (std::sqrt(p.mu) * E1 / std::fabs(p.k) - std::fabs(p.p_theta()));
  }

  const auto [alpha, beta] = potential_coeffs(p);
  const double a = ap.a, b = ap.b, c = ap.c;
  const double sac = std::sqrt(a - c);
  const EllipticModulus zm(ap.zeta);
  const double K = ellip_K(zm);
  const double E = ellip_E(zm);
  const double P1 = ellip_Pi(zm.zeta2, zm);

  const double I0 = 2.0 / sac * K;
  const double I1 = 2.0 / sac * ((b - c) * P1 + c * K);
  const double I2 = 4.0 * sac * (a + b + c) / 3.0 * E +
                    2.0 * (a * (c - b) + c * (b + 2.0 * c)) / (3.0 * sac) * K;

  const double E2 = ap.cubic[1];
  double S = E2 * I0 - 2.0 * p.mu * alpha * I1 - 2.0 * p.mu * beta * I2;
  const double pt = p.p_theta();
  if (pt != 0.0) {
    // characteristic zeta^2 c/b <= 0 < 1 here since c <= 0 < b
    const double P2 = ellip_Pi(zm.zeta2 * c / b, zm);
    const double Im1 = 2.0 / (c * b * sac) * ((c - b) * P2 + b * K);
    S -= pt * pt * Im1;
  }
  return S / (2.0 * std::sqrt(2.0 * p.mu * beta));
}

inline double action_at(const ModelParams& p, double E) {
  return action_integral(turning_points(p, E));
}

struct QuantizeOptions {
  /// Quantization condition S(E_n) = (n + maslov) pi hbar. The half-integer
  /// default reproduces the exact weak-coupling spectrum; maslov = 0 is the
  /// bare large-n condition.
  double maslov = 0.5;
  double residual_tol = 1e-10;
  double energy_ceiling = 1e18;
};

namespace detail {

/// Expand [lo, hi] upward until f(hi) > 0, starting from a physical scale.
template <typename F>
inline double expand_upper_bracket(F&& f, double lo, double span0, double ceiling,
                                   double& f_hi) {
  double hi = lo + span0;
  f_hi = f(hi);
  while (f_hi <= 0.0) {
    const double width = (hi - lo) * 2.0;
    hi = lo + width;
    if (hi > ceiling)
      throw NumericalError(
          "quantize: no bracket below the energy ceiling " + format_shortest(ceiling));
    f_hi = f(hi);
  }
  return hi;
}

}  // namespace detail

/// Solve S(E) = (n + maslov) pi hbar for each requested n >= 1.
inline SpectrumTable quantize(const ModelParams& p, const std::vector<int>& ns,
                              const QuantizeOptions& opts = {}) {
  p.require_spectral("quantize");
  for (int n : ns)
    if (n < 1) throw DomainError("quantize: n must be >= 1");
  std::vector<int> sorted_ns = ns;
  std::sort(sorted_ns.begin(), sorted_ns.end());

  const double floor = effective_potential_floor(p);
  const double quantum = p.hbar * std::fabs(p.k) / std::sqrt(p.mu);
  const double span0 = std::max({std::fabs(floor) * 1e-3, quantum, 1e-12});
  double lo = floor + 1e-13 * std::max(1.0, std::fabs(floor));

  SpectrumTable table;
  double f_lo = -1.0;  // S - target < 0 just above the floor
  for (int n : sorted_ns) {
    const double target = (static_cast<double>(n) + opts.maslov) *
                          std::numbers::pi * p.hbar;
    // Probes may land so close to the floor that the window degenerates;
    // that just means S is below target there.
    auto f = [&](double E) {
      try {
        return action_at(p, E) - target;
      } catch (const DomainError&) {
        return -target;
      }
    };
    double f_hi;
    const double hi =
        detail::expand_upper_bracket(f, lo, span0, opts.energy_ceiling, f_hi);
    f_lo = f(lo);
    if (f_lo > 0.0)
      throw NumericalError("quantize: lower bracket invalid (nonmonotone S?)");
    const double En = brent_root(f, lo, hi, f_lo, f_hi);
    const double residual = std::fabs(action_at(p, En) - target) / target;
    if (residual > opts.residual_tol)
      throw NumericalError("quantize: residual " + format_shortest(residual) +
                           " exceeds tolerance at n = " + std::to_string(n));
    table.add({n, p.l, p.pz, p.lambda, p.k, En, "wkb", residual});
    lo = En;  // warm start: spectrum increases with n
  }
  return table;
}

inline SpectrumTable quantize(const ModelParams& p, int n_min, int n_max,
                              const QuantizeOptions& opts = {}) {
  std::vector<int> ns;
  for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
  return quantize(p, ns, opts);
}

/// Sweep-oriented inversion: sample S(E) on a geometric grid (25 points per
/// decade above the potential floor), interpolate with a monotone cubic,
/// invert per level and polish with two secant steps on the true action.
inline SpectrumTable quantize_interpolated(const ModelParams& p,
                                           const std::vector<int>& ns,
                                           const QuantizeOptions& opts = {}) {
  p.require_spectral("quantize_interpolated");
  if (ns.empty()) return {};
  for (int n : ns)
    if (n < 1) throw DomainError("quantize_interpolated: n must be >= 1");
  const int n_max = *std::max_element(ns.begin(), ns.end());
  const int n_min = *std::min_element(ns.begin(), ns.end());
  const double target_max =
      (static_cast<double>(n_max) + opts.maslov) * std::numbers::pi * p.hbar;
  const double target_min =
      (static_cast<double>(n_min) + opts.maslov) * std::numbers::pi * p.hbar;

  const double floor = effective_potential_floor(p);
  const double quantum = p.hbar * std::fabs(p.k) / std::sqrt(p.mu);
  auto safe_action = [&](double E) {
    try {
      return action_at(p, E);
    } catch (const DomainError&) {
      return 0.0;  // degenerate window at the floor
    }
  };
  double u_lo = std::max({std::fabs(floor) * 1e-3, quantum, 1e-12});
  for (int it = 0; it < 80 && safe_action(floor + u_lo) > target_min; ++it)
    u_lo *= 0.5;
  double u_hi = u_lo, f_hi;
  u_hi = detail::expand_upper_bracket(
             [&](double E) { return safe_action(E) - target_max; }, floor,
             u_lo, opts.energy_ceiling, f_hi) -
         floor;

  // geometric grid in u = E - floor, 25 points per decade
  const double decades = std::log10(u_hi / u_lo);
  const int npts = std::max(8, static_cast<int>(std::ceil(decades * 25.0)) + 1);
  std::vector<double> us, ss;
  us.reserve(npts);
  ss.reserve(npts);
  for (int i = 0; i < npts; ++i) {
    const double u = u_lo * std::pow(u_hi / u_lo, static_cast<double>(i) / (npts - 1));
    const double s = safe_action(floor + u);
    if (!ss.empty() && !(s > ss.back())) continue;  // degenerate leading points
    us.push_back(u);
    ss.push_back(s);
  }
  MonotoneCubic interp(ss, us);  // invert: u as a function of S

  SpectrumTable table;
  std::vector<int> sorted_ns = ns;
  std::sort(sorted_ns.begin(), sorted_ns.end());
  for (int n : sorted_ns) {
    const double target =
        (static_cast<double>(n) + opts.maslov) * std::numbers::pi * p.hbar;
    double E = floor + interp(target);
    // secant polish on the true action
    double E2 = E * (1.0 + 1e-7) + 1e-300;
    double g1 = action_at(p, E) - target;
    double g2 = action_at(p, E2) - target;
    for (int it = 0; it < 8 && g2 != g1 && std::fabs(g2) > 0.0; ++it) {
      const double En = E2 - g2 * (E2 - E) / (g2 - g1);
      E = E2;
      g1 = g2;
      E2 = En;
      g2 = action_at(p, E2) - target;
      if (std::fabs(g2) <= 1e-12 * target) break;
    }
    const double residual = std::fabs(g2) / target;
    if (residual > opts.residual_tol)
      throw NumericalError("quantize_interpolated: residual too large at n = " +
                           std::to_string(n));
    table.add({n, p.l, p.pz, p.lambda, p.k, E2, "wkb", residual});
  }
  return table;
}

/// Exact weak-coupling spectrum
///   E = k^2 m^2/2 + (n_x + n_y + 1) hbar |k| / sqrt(mu) + pz^2/(2 mu).
inline double weak_coupling_spectrum(const ModelParams& p, int n_x_plus_n_y) {
  if (n_x_plus_n_y < 0)
    throw DomainError("weak_coupling_spectrum: n_x + n_y must be >= 0");
  return p.k * p.k * p.m * p.m / 2.0 +
         (n_x_plus_n_y + 1.0) * p.hbar * std::fabs(p.k) / std::sqrt(p.mu) +
         p.pz * p.pz / (2.0 * p.mu);
}

/// Map onto the normalized quartic radial equation
///   -(d^2/dr^2 + (1/r) d/dr - l^2/r^2) psi + (r^2 - 2 g r^4) psi = calE psi
/// by choosing the particle mass from 16 mu^2 - 4 k^2 hbar^2 mu
/// - hbar^2 (lambda^2 k^2 m^2 - 4 lambda k pz) = 0 so the r^2 coefficient
/// normalizes to one. g is evaluated at the physical root mu_plus.
struct ZJMap {
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  double g = 0.0;

  /// Energy shift calE = E - pz^2/(2 mu+) - hbar l lambda k m/(2 mu+) - k^2 m^2/2.
  double energy_shift(const ModelParams& p, double E) const {
    return E - p.pz * p.pz / (2.0 * mu_plus) -
           p.hbar * p.l * p.lambda * p.k * p.m / (2.0 * mu_plus) -
           p.k * p.k * p.m * p.m / 2.0;
  }
};

inline ZJMap map_to_zj(const ModelParams& p) {
  const double h2 = p.hbar * p.hbar;
  const double disc = h2 * p.k * p.k * p.k * p.k +
                      4.0 * (p.lambda * p.lambda * p.k * p.k * p.m * p.m -
                             4.0 * p.lambda * p.k * p.pz);
  if (disc < 0.0)
    throw DomainError("map_to_zj: negative discriminant (alpha would be complex)");
  ZJMap zm;
  const double root = p.hbar * std::sqrt(disc);
  zm.mu_plus = (p.k * p.k * h2 + root) / 8.0;
  zm.mu_minus = (p.k * p.k * h2 - root) / 8.0;
  if (!(zm.mu_plus > 0.0)) throw DomainError("map_to_zj: mu_plus must be > 0");
  // alpha evaluated at mu_plus equals 2 mu_plus / hbar^2 by construction
  const ModelParams q(p.lambda, p.k, p.m, zm.mu_plus, p.hbar, p.pz, p.l);
  const auto [alpha, beta] = potential_coeffs(q);
  if (!(alpha > 0.0)) throw DomainError("map_to_zj: requires alpha(mu_plus) > 0");
  zm.g = -beta / (2.0 * alpha * alpha);
  return zm;
}

}  // namespace screwon

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "screwon/errors.hpp"
#include "screwon/ode.hpp"
#include "screwon/params.hpp"

namespace screwon {

/// Cartesian phase-space point (x, y, z, px, py, pz) at time t.
struct DarbouxState {
  double x = 0.0, y = 0.0, z = 0.0;
  double px = 0.0, py = 0.0, pz = 0.0;
  double t = 0.0;

  std::array<double, 6> as_array() const { return {x, y, z, px, py, pz}; }
  static DarbouxState from_array(const std::array<double, 6>& a, double t) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], t};
  }
};

/// Lie-algebra variables L, S at time t; K = (0, 0, -k) is fixed.
struct LSState {
  std::array<double, 3> L{};
  std::array<double, 3> S{};
  double t = 0.0;
};

inline double hamiltonian(const DarbouxState& s, const ModelParams& p) {
  const auto [alpha, beta] = potential_coeffs(p);
  const double r2 = s.x * s.x + s.y * s.y;
  return (s.px * s.px + s.py * s.py + s.pz * s.pz) / (2.0 * p.mu) +
         p.lambda * p.k * p.m * (s.x * s.py - s.y * s.px) / (2.0 * p.mu) +
         alpha * r2 + beta * r2 * r2 + p.k * p.k * p.m * p.m / 2.0;
}

inline double angular_momentum_z(const DarbouxState& s) {
  return s.x * s.py - s.y * s.px;
}

/// Equations of motion in Darboux coordinates.
inline DarbouxState darboux_rhs(const DarbouxState& s, const ModelParams& p) {
  const auto [alpha, beta] = potential_coeffs(p);
  const double lkm = p.lambda * p.k * p.m;
  const double r2 = s.x * s.x + s.y * s.y;
  const double quart = p.lambda * p.lambda * p.k * p.k / (2.0 * p.mu);
  DarbouxState d;
  d.x = s.px / p.mu - lkm * s.y / (2.0 * p.mu);
  d.y = s.py / p.mu + lkm * s.x / (2.0 * p.mu);
  d.z = s.pz / p.mu - p.lambda * p.k * r2 / (2.0 * p.mu);
  d.px = -lkm * s.py / (2.0 * p.mu) - 2.0 * alpha * s.x - quart * r2 * s.x;
  d.py = lkm * s.px / (2.0 * p.mu) - 2.0 * alpha * s.y - quart * r2 * s.y;
  d.pz = 0.0;
  d.t = 1.0;
  return d;
}

/// Euler equations on the nilpotent algebra:
///   dS_a/dt = lambda eps_abc S_b L_c,  dL_a/dt = eps_abc K_b S_c,
/// with K = (0, 0, -k).
inline LSState ls_rhs(const LSState& s, const ModelParams& p) {
  LSState d;
  d.t = 1.0;
  const auto& L = s.L;
  const auto& S = s.S;
  d.S = {p.lambda * (S[1] * L[2] - S[2] * L[1]),
         p.lambda * (S[2] * L[0] - S[0] * L[2]),
         p.lambda * (S[0] * L[1] - S[1] * L[0])};
  const std::array<double, 3> K{0.0, 0.0, -p.k};
  d.L = {K[1] * S[2] - K[2] * S[1], K[2] * S[0] - K[0] * S[2],
         K[0] * S[1] - K[1] * S[0]};
  return d;
}

/// Map a Darboux point to the L-S variables:
///   L1 = k y, L2 = -k x, L3 = -m k,
///   S1 = px - (lambda k m / 2) y, S2 = py + (lambda k m / 2) x,
///   S3 = pz - k/lambda - (lambda k / 2)(x^2 + y^2).
inline LSState darboux_to_ls(const DarbouxState& s, const ModelParams& p) {
  if (p.lambda == 0.0)
    throw DomainError("darboux_to_ls: lambda = 0 (S3 map has k/lambda)");
  LSState out;
  out.t = s.t;
  out.L = {p.k * s.y, -p.k * s.x, -p.m * p.k};
  const double half = p.lambda * p.k * p.m / 2.0;
  out.S = {s.px - half * s.y, s.py + half * s.x,
           s.pz - p.k / p.lambda -
               p.lambda * p.k * (s.x * s.x + s.y * s.y) / 2.0};
  return out;
}

/// Hamiltonian and Casimirs of the L-S system:
///   H = (S_a^2 + L_a^2)/2 + k S3/lambda + k^2/(2 lambda^2),
///   Casimirs L3 and c = (L1^2+L2^2+L3^2)/(2 k^2) + S3/(lambda k).
inline double ls_hamiltonian(const LSState& s, const ModelParams& p) {
  if (p.lambda == 0.0) throw DomainError("ls_hamiltonian: lambda = 0");
  double q = 0.0;
  for (int i = 0; i < 3; ++i) q += s.S[i] * s.S[i] + s.L[i] * s.L[i];
  return q / 2.0 + p.k * s.S[2] / p.lambda +
         p.k * p.k / (2.0 * p.lambda * p.lambda);
}

inline double ls_casimir(const LSState& s, const ModelParams& p) {
  if (p.lambda == 0.0 || p.k == 0.0)
    throw DomainError("ls_casimir: needs lambda != 0 and k != 0");
  const double L2 = s.L[0] * s.L[0] + s.L[1] * s.L[1] + s.L[2] * s.L[2];
  return L2 / (2.0 * p.k * p.k) + s.S[2] / (p.lambda * p.k);
}

struct Trajectory {
  std::vector<DarbouxState> states;
  double max_H_drift = 0.0;   // relative
  double max_pz_drift = 0.0;  // absolute, scaled below
  double max_Lz_drift = 0.0;
};

struct LSTrajectory {
  std::vector<LSState> states;
  double max_H_drift = 0.0;
  double max_L3_drift = 0.0;
  double max_casimir_drift = 0.0;
};

namespace detail {

/// The drift contract is on the whole trajectory, so the integrator runs at a
/// tolerance tightened by the horizon length (per-step errors accumulate).
inline Dopri5<6>::Options horizon_options(const ModelParams& p, double T,
                                          double tol) {
  if (!(tol > 0.0)) throw DomainError("integrate: tol must be > 0");
  const double t_char = (p.k != 0.0) ? std::sqrt(p.mu) / std::fabs(p.k) : 1.0;
  const double scale = std::min(1.0, t_char / (std::fabs(T) + t_char));
  Dopri5<6>::Options opts;
  opts.rtol = std::max(tol * scale, 5.0e-15);
  opts.atol = opts.rtol * 1e-2;
  return opts;
}

}  // namespace detail

/// Integrate the Darboux equations over [0, T]; the returned trajectory holds
/// every accepted step and the observed conservation drifts of H, pz, Lz.
inline Trajectory integrate_darboux(const DarbouxState& s0, const ModelParams& p,
                                    double T, double tol) {
  const auto opts = detail::horizon_options(p, T, tol);
  Trajectory traj;
  const double H0 = hamiltonian(s0, p);
  const double Lz0 = angular_momentum_z(s0);
  const double escale = std::max(std::fabs(H0), p.k * p.k * p.m * p.m / 2.0) + 1e-300;
  const double lscale = std::max(1.0, std::fabs(Lz0));
  auto rhs = [&p](double, const std::array<double, 6>& y,
                  std::array<double, 6>& dy) {
    const DarbouxState d = darboux_rhs(DarbouxState::from_array(y, 0.0), p);
    dy = d.as_array();
  };
  auto observe = [&](double t, const std::array<double, 6>& y) {
    const DarbouxState s = DarbouxState::from_array(y, t);
    traj.states.push_back(s);
    traj.max_H_drift = std::max(traj.max_H_drift,
                                std::fabs(hamiltonian(s, p) - H0) / escale);
    traj.max_pz_drift =
        std::max(traj.max_pz_drift, std::fabs(s.pz - s0.pz) /
                                        std::max(1.0, std::fabs(s0.pz)));
    traj.max_Lz_drift = std::max(
        traj.max_Lz_drift, std::fabs(angular_momentum_z(s) - Lz0) / lscale);
  };
  Dopri5<6>::integrate(rhs, 0.0, T, s0.as_array(), opts, observe);
  return traj;
}

/// Integrate the L-S Euler equations over [0, T].
inline LSTrajectory integrate_ls(const LSState& s0, const ModelParams& p,
                                 double T, double tol) {
  const auto opts = detail::horizon_options(p, T, tol);
  LSTrajectory traj;
  const double H0 = ls_hamiltonian(s0, p);
  const double c0 = ls_casimir(s0, p);
  const double hscale = std::fabs(H0) + 1e-300;
  const double cscale = std::max(1.0, std::fabs(c0));
  auto rhs = [&p](double, const std::array<double, 6>& y,
                  std::array<double, 6>& dy) {
    LSState s;
    s.L = {y[0], y[1], y[2]};
    s.S = {y[3], y[4], y[5]};
    const LSState d = ls_rhs(s, p);
    dy = {d.L[0], d.L[1], d.L[2], d.S[0], d.S[1], d.S[2]};
  };
  auto observe = [&](double t, const std::array<double, 6>& y) {
    LSState s;
    s.L = {y[0], y[1], y[2]};
    s.S = {y[3], y[4], y[5]};
    s.t = t;
    traj.states.push_back(s);
    traj.max_H_drift =
        std::max(traj.max_H_drift, std::fabs(ls_hamiltonian(s, p) - H0) / hscale);
    traj.max_L3_drift = std::max(
        traj.max_L3_drift,
        std::fabs(s.L[2] - s0.L[2]) / std::max(1.0, std::fabs(s0.L[2])));
    traj.max_casimir_drift =
        std::max(traj.max_casimir_drift, std::fabs(ls_casimir(s, p) - c0) / cscale);
  };
  Dopri5<6>::integrate(
      rhs, 0.0, T, {s0.L[0], s0.L[1], s0.L[2], s0.S[0], s0.S[1], s0.S[2]}, opts,
      observe);
  return traj;
}

/// Winding of the (x, y) angle per radial oscillation, estimated from a
/// trajectory. Reported as a diagnostic only; quasiperiodic orbits give an
/// irrational-looking ratio.
inline double rotation_number_estimate(const Trajectory& traj) {
  if (traj.states.size() < 16) return 0.0;
  double total_angle = 0.0;
  int radial_minima = 0;
  double prev_r = 0.0, prev_prev_r = 0.0;
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const auto& a = traj.states[i - 1];
    const auto& b = traj.states[i];
    const double cross = a.x * b.y - a.y * b.x;
    const double dot = a.x * b.x + a.y * b.y;
    if (dot != 0.0 || cross != 0.0) total_angle += std::atan2(cross, dot);
    const double r = std::hypot(b.x, b.y);
    if (i >= 2 && prev_r < prev_prev_r && prev_r < r) ++radial_minima;
    prev_prev_r = prev_r;
    prev_r = r;
  }
  if (radial_minima == 0) return 0.0;
  return total_angle / (2.0 * std::numbers::pi * radial_minima);
}

}  // namespace screwon

#pragma once

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "screwon/errors.hpp"
#include "screwon/ode.hpp"
#include "screwon/params.hpp"
#include "screwon/rootfind.hpp"
#include "screwon/spectrum.hpp"

namespace screwon {

enum class RadialForm {
  full,            // -hbar_t^2 (laplacian_l) + (alpha_t r^2 + beta_t r^4 + l lambda_t hbar_t), eigenvalue E1_t
  double_scaling,  // laplacian_l - (g^2/4)(r^2 + r^4) - g l, eigenvalue g^2 E2_t
  weak             // harmonic limit (beta_t = 0)
};

/// Radial eigenvalue problem in dimensionless variables.
struct RadialProblem {
  DimensionlessParams dp;
  int l = 0;
  RadialForm form = RadialForm::full;

  double alpha_t() const {
    switch (form) {
      case RadialForm::full:
        return dp.lambda_t * dp.lambda_t / 4.0 - dp.lambda_t * dp.pz_t + 1.0;
      case RadialForm::weak:
        return 1.0;
      case RadialForm::double_scaling:
        return dp.g_t * dp.g_t / 4.0;
    }
    return 0.0;
  }
  double beta_t() const {
    switch (form) {
      case RadialForm::full:
        return dp.lambda_t * dp.lambda_t / 4.0;
      case RadialForm::weak:
        return 0.0;
      case RadialForm::double_scaling:
        return dp.g_t * dp.g_t / 4.0;
    }
    return 0.0;
  }
  /// Effective Planck constant of the form (the double-scaling equation is
  /// already divided through by hbar_t^2).
  double hbar_eff() const {
    return form == RadialForm::double_scaling ? 1.0 : dp.hbar_t;
  }
  /// Constant shift added to the potential (from the rotational term).
  double shift() const {
    switch (form) {
      case RadialForm::full:
        return static_cast<double>(l) * dp.lambda_t * dp.hbar_t;
      case RadialForm::weak:
        return 0.0;
      case RadialForm::double_scaling:
        return static_cast<double>(l) * dp.g_t;
    }
    return 0.0;
  }
};

/// Frobenius series rho(r) = r^eta sum_j coeffs[j] r^j about r = 0,
/// eta = |l|; odd coefficients vanish.
struct FrobeniusSeries {
  double eta = 0.0;
  std::vector<double> coeffs;  // rho_0 .. rho_N

  double value(double r) const {
    double s = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) s = s * r + coeffs[j];
    return std::pow(r, eta) * s;
  }
  double derivative(double r) const {
    double s = 0.0, ds = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      ds = ds * r + s;
      s = s * r + coeffs[j];
    }
    return eta * std::pow(r, eta - 1.0) * s + std::pow(r, eta) * ds;
  }
};

/// Four-term recurrence for the series coefficients. For the double-scaling
/// form (scaled energy E2_t):
///   n(2 eta + n) rho_n + (g^2 E2 - l g) rho_{n-2}
///     - (g^2/4)(rho_{n-4} + rho_{n-6}) = 0,
/// and for the full form (scaled energy E1_t) the same substitution gives
///   n(2 eta + n) rho_n - (l lambda_t/hbar_t - E1/hbar_t^2) rho_{n-2}
///     - (alpha_t/hbar_t^2) rho_{n-4} - (beta_t/hbar_t^2) rho_{n-6} = 0,
/// which reduces to the double-scaling relation when alpha_t -> beta_t,
/// alpha_t/hbar_t^2 -> g^2/4 and E1/hbar_t^2 -> g^2 E2.
inline FrobeniusSeries frobenius_coeffs(const RadialProblem& rp, double E_scaled,
                                        int N, double rho0 = 1.0) {
  if (N < 6) throw DomainError("frobenius_coeffs: N must be >= 6");
  const int eta = std::abs(rp.l);
  const double h2 = rp.hbar_eff() * rp.hbar_eff();
  // numerator coefficients of rho_{n-2}, rho_{n-4}, rho_{n-6}
  const double c2m = rp.shift() / h2 - E_scaled * ((rp.form == RadialForm::double_scaling)
                                                       ? rp.dp.g_t * rp.dp.g_t
                                                       : 1.0 / h2);
  const double c4m = rp.alpha_t() / h2;
  const double c6m = rp.beta_t() / h2;

  FrobeniusSeries fs;
  fs.eta = eta;
  fs.coeffs.assign(N + 1, 0.0);
  fs.coeffs[0] = rho0;
  for (int n = 2; n <= N; n += 2) {
    const double r2 = fs.coeffs[n - 2];
    const double r4 = (n - 4 >= 0) ? fs.coeffs[n - 4] : 0.0;
    const double r6 = (n - 6 >= 0) ? fs.coeffs[n - 6] : 0.0;
    fs.coeffs[n] = (c2m * r2 + c4m * r4 + c6m * r6) /
                   (static_cast<double>(n) * (2.0 * eta + n));
  }
  return fs;
}

/// Decaying large-r envelope of the full-form radial solution:
///   rho ~ exp(-(sqrt(beta_t)/hbar_t)(r^3/3 + alpha_t r/(2 beta_t))) r^{-3/2}.
inline double asymptotic_tail(const RadialProblem& rp, double r) {
  const double bt = rp.beta_t();
  if (bt == 0.0)
    throw DomainError("asymptotic_tail: beta_t = 0 (use the Gaussian weak-coupling tail)");
  const double at = rp.alpha_t();
  const double pref = std::sqrt(bt) / rp.hbar_eff();
  return std::exp(-pref * (r * r * r / 3.0 + at * r / (2.0 * bt))) *
         std::pow(r, -1.5);
}

/// d/dr log of the envelope above (finite where the value itself underflows).
inline double asymptotic_tail_log_derivative(const RadialProblem& rp, double r) {
  const double bt = rp.beta_t();
  if (bt == 0.0)
    throw DomainError("asymptotic_tail_log_derivative: beta_t = 0");
  const double at = rp.alpha_t();
  return -(std::sqrt(bt) / rp.hbar_eff()) * (r * r + at / (2.0 * bt)) - 1.5 / r;
}

namespace radial_detail {

struct Grid {
  double R = 0.0;
  int N = 0;
};

/// Symmetric tridiagonal representation of
///   -hbar^2 (1/r)(r u')' + W(r) u
/// on the cell-centered grid r_j = (j - 1/2) h with zero-flux inner face and
/// Dirichlet outer boundary.
inline void build_tridiagonal(const std::function<double(double)>& W, double hbar,
                              const Grid& g, std::vector<double>& diag,
                              std::vector<double>& offdiag) {
  const double h = g.R / g.N;
  const double h2 = hbar * hbar;
  diag.resize(g.N);
  offdiag.resize(g.N - 1);
  for (int j = 1; j <= g.N; ++j) {
    const double r = (j - 0.5) * h;
    const double f_out = j * h, f_in = (j - 1) * h;
    diag[j - 1] = h2 * (f_out + f_in) / (h * h * r) + W(r);
    if (j < g.N) {
      const double rn = (j + 0.5) * h;
      offdiag[j - 1] = -h2 * f_out / (h * h * std::sqrt(r * rn));
    }
  }
}

/// Lowest `count` eigenvalues (and optionally vectors) via LAPACK MRRR.
inline std::vector<double> tridiagonal_eigs(std::vector<double> diag,
                                            std::vector<double> offdiag, int count,
                                            std::vector<double>* vectors = nullptr) {
  const int n = static_cast<int>(diag.size());
  count = std::min(count, n);
  std::vector<double> w(n);
  std::vector<lapack_int> isuppz(2 * std::max(1, count));
  lapack_int m = 0;
  lapack_int info;
  if (vectors) {
    vectors->assign(static_cast<std::size_t>(n) * count, 0.0);
    info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(),
                          offdiag.data(), 0.0, 0.0, 1, count, 0.0, &m, w.data(),
                          vectors->data(), n, isuppz.data());
  } else {
    std::vector<double> z(1);
    info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', n, diag.data(),
                          offdiag.data(), 0.0, 0.0, 1, count, 0.0, &m, w.data(),
                          z.data(), 1, isuppz.data());
  }
  if (info != 0)
    throw NumericalError("tridiagonal eigensolver failed (info = " +
                         std::to_string(info) + ")");
  w.resize(count);
  return w;
}

inline std::function<double(double)> potential_of(const RadialProblem& rp) {
  const double at = rp.alpha_t(), bt = rp.beta_t(), sh = rp.shift();
  const double h2 = rp.hbar_eff() * rp.hbar_eff();
  const double ll = static_cast<double>(rp.l) * rp.l;
  return [=](double r) {
    return h2 * ll / (r * r) + at * r * r + bt * r * r * r * r + sh;
  };
}

/// Radius at which the decaying envelope has fallen by >= `efolds` beyond the
/// outer turning point of energy E.
inline double decay_radius(const RadialProblem& rp, double E, double efolds) {
  const double at = rp.alpha_t(), bt = rp.beta_t();
  const double hb = rp.hbar_eff();
  const double Ered = std::max(E - rp.shift(), hb);
  double rt;  // outer turning point (centrifugal term ignored: upper bound)
  if (bt > 0.0) {
    const double x = (-at + std::sqrt(at * at + 4.0 * bt * Ered)) / (2.0 * bt);
    rt = std::sqrt(std::max(x, hb / std::sqrt(bt + 1.0)));
  } else {
    rt = std::sqrt(Ered / at);
  }
  if (bt > 0.0) {
    auto phi = [&](double r) {
      return (std::sqrt(bt) / hb) * (r * r * r / 3.0 + at * r / (2.0 * bt));
    };
    double R = rt * 1.05 + 1.0;
    while (phi(R) - phi(rt) < efolds) R *= 1.25;
    return R;
  }
  // Gaussian tail: phi = sqrt(at) r^2 / (2 hb)
  return std::sqrt(rt * rt + 2.0 * efolds * hb / std::sqrt(at));
}

inline Grid choose_grid(const RadialProblem& rp, double E_top) {
  const double R = decay_radius(rp, E_top, 42.0);
  const double kmax =
      std::sqrt(std::max(E_top - rp.shift(), 1.0)) / rp.hbar_eff();
  // target k*h <= 1/125 so the h^4 Richardson residual is ~1e-9
  int N = static_cast<int>(std::ceil(125.0 * R * kmax));
  N = std::clamp(N, 2000, 120000);
  if (N % 2 != 0) ++N;
  return {R, N};
}

/// Richardson-extrapolated FD eigenvalues on an automatically sized grid.
/// Returns eigenvalues of the operator (E1_t for full/weak forms).
inline std::vector<double> fd_eigenvalues(const RadialProblem& rp, int count,
                                          std::optional<Grid> fixed = {},
                                          std::vector<double>* fine_vectors = nullptr,
                                          Grid* used = nullptr) {
  const auto W = potential_of(rp);
  const double hb = rp.hbar_eff();
  Grid g;
  if (fixed) {
    g = *fixed;
  } else {
    // coarse pass to learn the top of the requested window
    Grid coarse{decay_radius(rp, rp.shift() + 4.0 * hb * (2.0 * count + std::abs(rp.l) + 2.0) *
                                             std::sqrt(std::max(rp.alpha_t(), 1.0)),
                             42.0),
                2400};
    std::vector<double> d, e;
    build_tridiagonal(W, hb, coarse, d, e);
    double etop = tridiagonal_eigs(std::move(d), std::move(e), count).back();
    for (int pass = 0; pass < 2; ++pass) {
      g = choose_grid(rp, etop);
      if (g.R <= coarse.R * 1.02) break;
      build_tridiagonal(W, hb, g, d, e);
      etop = tridiagonal_eigs(std::move(d), std::move(e), count).back();
      coarse = g;
    }
  }
  std::vector<double> d, e;
  build_tridiagonal(W, hb, {g.R, g.N / 2}, d, e);
  const auto w_half = tridiagonal_eigs(std::move(d), std::move(e), count);
  build_tridiagonal(W, hb, g, d, e);
  const auto w_full = tridiagonal_eigs(std::move(d), std::move(e), count, fine_vectors);
  std::vector<double> w(count);
  for (int i = 0; i < count; ++i) w[i] = (4.0 * w_full[i] - w_half[i]) / 3.0;
  if (used) *used = g;

  if (fine_vectors) {
    // normalizability: the edge value of the (integrand of the) norm must be
    // negligible, otherwise the box truncated the eigenfunction
    for (int i = 0; i < count; ++i) {
      double peak = 0.0;
      for (int j = 0; j < g.N; ++j)
        peak = std::max(peak, std::fabs((*fine_vectors)[i * g.N + j]));
      const double edge = std::fabs((*fine_vectors)[i * g.N + g.N - 1]);
      if (edge > 1e-6 * peak)
        throw NumericalError(
            "fd_eigenvalues: R_max too small, eigenfunction not decayed at the boundary");
    }
  }
  return w;
}

}  // namespace radial_detail

/// Shooting eigenvalue in the first-derivative-free variable u = sqrt(r) rho:
///   hbar^2 u'' = [W(r) + hbar^2 (l^2 - 1/4) ... ] (assembled below) u.
/// Launched from the Frobenius series at small r, matched against the decaying
/// tail at the outer turning point; the eigenvalue is polished with Brent on
/// the log-derivative mismatch.
class RadialShooter {
 public:
  RadialShooter(const RadialProblem& rp, double R) : rp_(rp), R_(R) {
    const double h2 = rp.hbar_eff() * rp.hbar_eff();
    const double at = rp.alpha_t(), bt = rp.beta_t(), sh = rp.shift();
    const double leff = static_cast<double>(rp.l) * rp.l - 0.25;
    weff_ = [=](double r) {
      return h2 * leff / (r * r) + at * r * r + bt * r * r * r * r + sh;
    };
  }

  /// Log-derivative mismatch at the matching radius, bounded to (-1, 1).
  double mismatch(double E, int* nodes = nullptr) const {
    const double rm = match_radius(E);
    const auto [uo, upo, nodes_out] = integrate_outward(E, rm);
    const auto [ui, upi, nodes_in] = integrate_inward(E, rm);
    if (nodes) *nodes = nodes_out + nodes_in;
    const double lo = upo / uo, li = upi / ui;
    return (lo - li) / (1.0 + std::fabs(lo) + std::fabs(li));
  }

  /// Polish an eigenvalue near `guess`; `spacing` sets the bracket scale.
  double solve(double guess, double spacing, int* nodes = nullptr) const {
    auto f = [&](double E) { return mismatch(E); };
    double delta = std::max(1e-6 * spacing, 1e-12 * std::fabs(guess));
    double lo = guess - delta, hi = guess + delta;
    double flo = f(lo), fhi = f(hi);
    for (int it = 0; it < 60 && flo * fhi > 0.0; ++it) {
      delta *= 2.0;
      lo = guess - delta;
      hi = guess + delta;
      flo = f(lo);
      fhi = f(hi);
    }
    if (flo * fhi > 0.0)
      throw NumericalError("RadialShooter: could not bracket the eigenvalue");
    const double E = brent_root(f, lo, hi, flo, fhi);
    if (nodes) mismatch(E, nodes);
    return E;
  }

 private:
  double match_radius(double E) const {
    const double at = rp_.alpha_t(), bt = rp_.beta_t();
    const double Ered = std::max(E - rp_.shift(), 1e-8);
    double rt;
    if (bt > 0.0)
      rt = std::sqrt((-at + std::sqrt(at * at + 4.0 * bt * Ered)) / (2.0 * bt));
    else
      rt = std::sqrt(Ered / at);
    return std::clamp(rt, 0.05 * R_, 0.85 * R_);
  }

  struct EndState {
    double u, up;
    int nodes;
  };

  EndState integrate_outward(double E, double rm) const {
    const double h2 = rp_.hbar_eff() * rp_.hbar_eff();
    auto rhs = [&](double r, const std::array<double, 2>& y,
                   std::array<double, 2>& dy) {
      dy[0] = y[1];
      dy[1] = (weff_(r) - E) / h2 * y[0];
    };
    const double r0 = std::min(1e-3, 1e-3 * rm);
    const auto fs = frobenius_coeffs(rp_, scaled_energy(E), 12);
    // u = sqrt(r) rho, launch normalized to u(r0) = O(1)
    const double rho = fs.value(r0), drho = fs.derivative(r0);
    const double scale = std::pow(r0, fs.eta + 0.5);
    std::array<double, 2> y{std::sqrt(r0) * rho / scale,
                            (std::sqrt(r0) * drho + rho / (2.0 * std::sqrt(r0))) / scale};
    return march(rhs, r0, rm, y);
  }

  EndState integrate_inward(double E, double rm) const {
    const double h2 = rp_.hbar_eff() * rp_.hbar_eff();
    auto rhs = [&](double r, const std::array<double, 2>& y,
                   std::array<double, 2>& dy) {
      dy[0] = y[1];
      dy[1] = (weff_(r) - E) / h2 * y[0];
    };
    double ld;  // log-derivative of the decaying envelope at R
    if (rp_.beta_t() > 0.0)
      ld = asymptotic_tail_log_derivative(rp_, R_) + 0.5 / R_;  // u = sqrt(r) rho
    else
      ld = -std::sqrt(std::max(weff_(R_) - E, 1.0)) / rp_.hbar_eff();
    std::array<double, 2> y{1e-160, 1e-160 * ld};
    return march(rhs, R_, rm, y);
  }

  template <typename F>
  EndState march(F&& rhs, double from, double to, std::array<double, 2> y) const {
    // renormalize between segments: only the log-derivative survives, so the
    // huge growth through the forbidden region cannot overflow
    constexpr int segments = 8;
    int nodes = 0;
    double prev_sign = (y[0] > 0.0) ? 1.0 : -1.0;
    Dopri5<2>::Options opts;
    opts.rtol = 1e-12;
    opts.atol = 1e-18;
    for (int s = 0; s < segments; ++s) {
      const double t0 = from + (to - from) * static_cast<double>(s) / segments;
      const double t1 = from + (to - from) * static_cast<double>(s + 1) / segments;
      y = Dopri5<2>::integrate(rhs, t0, t1, y, opts,
                               [&](double, const std::array<double, 2>& yy) {
                                 const double sg = (yy[0] > 0.0) ? 1.0 : -1.0;
                                 if (yy[0] != 0.0 && sg != prev_sign) {
                                   ++nodes;
                                   prev_sign = sg;
                                 }
                               });
      const double m = std::max(std::fabs(y[0]), std::fabs(y[1]));
      if (m > 1e100) {
        y[0] /= m;
        y[1] /= m;
      }
    }
    return {y[0], y[1], nodes};
  }

  /// Energy in the scale expected by frobenius_coeffs for this form.
  double scaled_energy(double E) const {
    if (rp_.form == RadialForm::double_scaling)
      return E / (rp_.dp.g_t * rp_.dp.g_t);
    return E;
  }

  RadialProblem rp_;
  double R_;
  std::function<double(double)> weff_;
};

/// Lowest `count` eigenvalues by two independent routes (Richardson finite
/// differences and Frobenius-launched shooting); the routes must agree to
/// 1e-7 relative. Rows carry dimensionful E; `residual` is the cross-method
/// relative difference.
inline SpectrumTable eigensolve(const RadialProblem& rp, int count) {
  if (count < 1) throw DomainError("eigensolve: count must be >= 1");
  if (rp.form == RadialForm::double_scaling)
    throw DomainError("eigensolve: use double_scaling_eigensolve for the scaled form");
  const ModelParams p = rp.dp.redimensionalize();
  p.require_spectral("eigensolve");

  radial_detail::Grid grid;
  std::vector<double> vectors;
  const auto fd = radial_detail::fd_eigenvalues(rp, count, {}, &vectors, &grid);

  RadialShooter shooter(rp, grid.R);
  SpectrumTable table;
  for (int n = 0; n < count; ++n) {
    const double spacing =
        (n + 1 < count ? fd[n + 1] : fd[n] * 1.01 + 1.0) - (n > 0 ? fd[n - 1] : 0.0);
    int nodes = -1;
    const double es = shooter.solve(fd[n], std::fabs(spacing) + 1e-12, &nodes);
    const double rel = std::fabs(es - fd[n]) / std::max(std::fabs(es), 1e-300);
    if (rel > 1e-7)
      throw NumericalError("eigensolve: FD and shooting disagree (" +
                           format_shortest(rel) + ") at level " + std::to_string(n));
    if (nodes != n)
      throw NumericalError("eigensolve: node count " + std::to_string(nodes) +
                           " does not label level " + std::to_string(n));
    auto to_E = [&](double E1t) {
      const double Et = E1t + rp.dp.pz_t * rp.dp.pz_t + 1.0;
      return rp.dp.unscale_energy(Et);
    };
    table.add({n, rp.l, p.pz, p.lambda, p.k, to_E(fd[n]), "radial-fd", rel});
    table.add({n, rp.l, p.pz, p.lambda, p.k, to_E(es), "radial-shoot", rel});
  }
  return table;
}

/// Scaled double-scaling eigenvalues E2_t(g_t, l); depends on g_t and l only,
/// so equal g_t gives bitwise-equal output regardless of how (lambda_t,
/// hbar_t) realized it.
inline std::vector<double> double_scaling_eigensolve(double g_t, int l, int count) {
  if (!(g_t > 0.0)) throw DomainError("double_scaling_eigensolve: g_t must be > 0");
  if (count < 1) throw DomainError("double_scaling_eigensolve: count must be >= 1");
  RadialProblem rp;
  rp.dp.g_t = g_t;
  rp.dp.lambda_t = g_t;  // placeholders; the form only reads g_t
  rp.dp.hbar_t = 1.0;
  rp.l = l;
  rp.form = RadialForm::double_scaling;
  auto w = radial_detail::fd_eigenvalues(rp, count);
  for (auto& v : w) v /= g_t * g_t;
  return w;
}

}  // namespace screwon

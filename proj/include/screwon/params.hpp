#pragma once

#include <cmath>
#include <string>

#include "screwon/errors.hpp"

namespace screwon {

/// Physical parameters of the screwon oscillator.
///
/// Dimensions: [mu] = M, [k] = M^{1/2} T^{-1}, [m] = L, [lambda] = M^{1/2} L^{-1},
/// [hbar] = action, [pz] = momentum. l is the integer angular quantum number,
/// p_theta = l*hbar throughout.
///
/// All values are immutable after construction and safe to share across threads.
struct ModelParams {
  double lambda = 1.0;
  double k = 1.0;
  double m = 1.0;
  double mu = 1.0;
  double hbar = 1.0;
  double pz = 0.0;
  int l = 0;

  ModelParams() = default;
  ModelParams(double lambda_, double k_, double m_, double mu_, double hbar_,
              double pz_, int l_)
      : lambda(lambda_), k(k_), m(m_), mu(mu_), hbar(hbar_), pz(pz_), l(l_) {
    if (!(mu > 0.0)) throw DomainError("ModelParams: mu must be > 0");
    if (!(hbar > 0.0)) throw DomainError("ModelParams: hbar must be > 0");
    if (lambda < 0.0) throw DomainError("ModelParams: lambda must be >= 0");
    if (!std::isfinite(lambda) || !std::isfinite(k) || !std::isfinite(m) ||
        !std::isfinite(pz))
      throw DomainError("ModelParams: non-finite parameter");
  }

  double p_theta() const { return static_cast<double>(l) * hbar; }

  /// k = 0 is a free particle and m = 0 degenerates the length scale; both are
  /// rejected for spectral computations (they remain legal for classical runs).
  void require_spectral(const char* who) const {
    if (k == 0.0)
      throw DomainError(std::string(who) + ": k = 0 is a free particle (continuous spectrum)");
    if (m == 0.0) throw DomainError(std::string(who) + ": m must be nonzero");
  }
};

/// Coefficients of the radial potential U(r) = alpha r^2 + beta r^4.
struct PotentialCoeffs {
  double alpha = 0.0;  // may have either sign (Mexican hat when negative)
  double beta = 0.0;   // > 0 whenever lambda != 0 and k != 0
};

inline PotentialCoeffs potential_coeffs(const ModelParams& p) {
  PotentialCoeffs c;
  c.alpha = p.lambda * p.lambda * p.k * p.k * p.m * p.m / (8.0 * p.mu) -
            p.lambda * p.k * p.pz / (2.0 * p.mu) + p.k * p.k / 2.0;
  c.beta = p.lambda * p.lambda * p.k * p.k / (8.0 * p.mu);
  return c;
}

/// Dimensionless reduction of ModelParams.
///
/// lambda_t = lambda*m/sqrt(mu), hbar_t = hbar/(k m^2 sqrt(mu)),
/// pz_t = pz/(k m sqrt(mu)), g_t = lambda_t/hbar_t = lambda*k*m^3/hbar.
/// Energies scale as E_t = 2E/(k^2 m^2). The dimensional anchors (k, m, mu)
/// are kept so the reduction round-trips exactly.
struct DimensionlessParams {
  double lambda_t = 0.0;
  double hbar_t = 1.0;
  double pz_t = 0.0;
  double g_t = 0.0;
  int l = 0;
  // anchors
  double k = 1.0;
  double m = 1.0;
  double mu = 1.0;

  double scale_energy(double E) const { return 2.0 * E / (k * k * m * m); }
  double unscale_energy(double E_t) const { return E_t * k * k * m * m / 2.0; }

  ModelParams redimensionalize() const {
    const double s = std::sqrt(mu);
    return ModelParams(lambda_t * s / m, k, m, mu, hbar_t * k * m * m * s,
                       pz_t * k * m * s, l);
  }
};

inline DimensionlessParams nondimensionalize(const ModelParams& p) {
  p.require_spectral("nondimensionalize");
  DimensionlessParams d;
  const double s = std::sqrt(p.mu);
  d.lambda_t = p.lambda * p.m / s;
  d.hbar_t = p.hbar / (p.k * p.m * p.m * s);
  d.pz_t = p.pz / (p.k * p.m * s);
  d.g_t = p.lambda * p.k * p.m * p.m * p.m / p.hbar;
  d.l = p.l;
  d.k = p.k;
  d.m = p.m;
  d.mu = p.mu;
  return d;
}

/// The part of an energy E that scales as m^2 k^2 once the conserved
/// pz and L_z = l*hbar contributions are removed.
struct EnergyScalingForm {
  double g_part = 0.0;  // E - pz^2/(2 mu) - lambda k m l hbar / mu
  double g = 0.0;       // g_part / (m^2 k^2); NaN when m*k == 0
};

inline EnergyScalingForm energy_scaling_form(const ModelParams& p, double E) {
  EnergyScalingForm f;
  f.g_part = E - p.pz * p.pz / (2.0 * p.mu) -
             p.lambda * p.k * p.m * p.p_theta() / p.mu;
  f.g = f.g_part / (p.m * p.m * p.k * p.k);
  return f;
}

}  // namespace screwon

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "screwon/errors.hpp"

namespace screwon {

/// Roots of sum_i c[i] z^i by the companion-matrix eigenvalue method.
/// Leading zero coefficients are trimmed at |c| <= tol * max|c|.
inline std::vector<std::complex<double>> polynomial_roots(
    std::vector<double> c, double trim_tol = 0.0) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return {};
  while (c.size() > 1 && std::fabs(c.back()) <= trim_tol * scale) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  if (n == 1) return {std::complex<double>(-c[0] / c[1], 0.0)};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()[i];
  return roots;
}

/// Real roots of a real-coefficient polynomial, Newton-polished and sorted.
/// A root is accepted as real when |Im| <= imag_tol * (1 + |root|).
inline std::vector<double> real_roots(const std::vector<double>& c,
                                      double imag_tol = 1.0e-9) {
  auto eval = [&](double x, double& d) {
    double v = 0.0;
    d = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
      d = d * x + v;
      v = v * x + c[i];
    }
    return v;
  };
  std::vector<double> out;
  for (const auto& z : polynomial_roots(c)) {
    if (std::fabs(z.imag()) > imag_tol * (1.0 + std::abs(z))) continue;
    double x = z.real();
    for (int it = 0; it < 3; ++it) {
      double d, v = eval(x, d);
      if (d == 0.0) break;
      const double step = v / d;
      if (!std::isfinite(step)) break;
      x -= step;
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Cluster complex roots that agree within tol (absolute on unit scale,
/// relative for large roots); returns (representative, multiplicity) pairs.
/// Used to recover the multiplicity of numerically split multiple roots.
inline std::vector<std::pair<std::complex<double>, int>> cluster_roots(
    const std::vector<std::complex<double>>& roots, double tol = 1.0e-8) {
  std::vector<std::pair<std::complex<double>, int>> clusters;
  for (const auto& r : roots) {
    bool merged = false;
    for (auto& [rep, count] : clusters) {
      if (std::abs(r - rep) <= tol * (1.0 + std::abs(rep))) {
        rep = (rep * static_cast<double>(count) + r) / static_cast<double>(count + 1);
        ++count;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.emplace_back(r, 1);
  }
  return clusters;
}

}  // namespace screwon

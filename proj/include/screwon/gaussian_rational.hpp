#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "screwon/weyl.hpp"

namespace screwon {

/// Exact complex number over the rationals, a + b i with a, b in Q.
/// Coefficient field for the exact-rational Weyl mode (valid whenever
/// hbar, lambda, k, m, pz are rational).
struct GaussianRational {
  using Q = boost::multiprecision::cpp_rational;
  Q re = 0;
  Q im = 0;

  GaussianRational() = default;
  GaussianRational(long long r) : re(r) {}  // NOLINT: implicit by design
  GaussianRational(Q r, Q i = 0) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Q(0), Q(1)}; }

  friend GaussianRational operator+(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator*(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a,
                                    const GaussianRational& b) {
    const Q n = b.re * b.re + b.im * b.im;
    if (n == 0) throw DomainError("GaussianRational: division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussianRational& operator+=(const GaussianRational& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

template <>
struct weyl_coeff_traits<GaussianRational> {
  static double abs_value(const GaussianRational& c) {
    const double r = static_cast<double>(c.re);
    const double i = static_cast<double>(c.im);
    return std::sqrt(r * r + i * i);
  }
  static GaussianRational conjugate(const GaussianRational& c) {
    return {c.re, -c.im};
  }
  /// Exact mode prunes only exact zeros.
  static bool negligible(const GaussianRational& c, double /*scale*/) {
    return c.re == 0 && c.im == 0;
  }
  static GaussianRational from_int(long long v) { return GaussianRational(v); }
};

}  // namespace screwon

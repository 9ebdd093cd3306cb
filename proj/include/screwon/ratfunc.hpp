#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <vector>

#include "screwon/errors.hpp"

namespace screwon {

/// Scalar hooks for polynomial arithmetic: numeric mode works over
/// std::complex<double> with relative tolerances, exact mode over
/// boost cpp_rational with exact zero tests.
template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<std::complex<double>> {
  static double magnitude(const std::complex<double>& v) { return std::abs(v); }
  static bool is_zero(const std::complex<double>& v, double scale) {
    return std::abs(v) <= 1e-10 * scale;
  }
  static constexpr bool exact = false;
};

template <>
struct scalar_traits<boost::multiprecision::cpp_rational> {
  static double magnitude(const boost::multiprecision::cpp_rational& v) {
    return std::fabs(static_cast<double>(v));
  }
  static bool is_zero(const boost::multiprecision::cpp_rational& v, double) {
    return v == 0;
  }
  static constexpr bool exact = true;
};

/// Dense univariate polynomial, ascending coefficients.
template <typename T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly variable() { return Poly(std::vector<T>{T(0), T(1)}); }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero

  double scale() const {
    double s = 0.0;
    for (const auto& v : c) s = std::max(s, scalar_traits<T>::magnitude(v));
    return s;
  }

  void trim() {
    const double s = scale();
    while (!c.empty() && scalar_traits<T>::is_zero(c.back(), s)) c.pop_back();
  }

  T eval(const T& x) const {
    T v(0);
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  }

  Poly derivative() const {
    if (c.size() <= 1) return {};
    std::vector<T> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * T(static_cast<int>(i));
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] - b.c[i];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c.size() + b.c.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const T& s) {
    Poly r = a;
    for (auto& v : r.c) v = v * s;
    r.trim();
    return r;
  }

  /// Quotient and remainder; b must be nonzero.
  static std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.is_zero()) throw DomainError("Poly::divmod: division by zero polynomial");
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<T> q(a.degree() - b.degree() + 1, T(0));
    const T lead = b.c.back();
    while (!a.is_zero() && a.degree() >= b.degree()) {
      const int d = a.degree() - b.degree();
      const T f = a.c.back() / lead;
      q[d] = f;
      for (std::size_t i = 0; i < b.c.size(); ++i)
        a.c[i + d] = a.c[i + d] - f * b.c[i];
      a.c.pop_back();
      a.trim();
    }
    return {Poly(std::move(q)), a};
  }

  /// Monic gcd by Euclid; in numeric mode remainders below the working scale
  /// are treated as zero (tolerance 1e-10 relative).
  static Poly gcd(Poly a, Poly b) {
    const double s0 = std::max(a.scale(), b.scale());
    while (!b.is_zero()) {
      auto [q, r] = divmod(a, b);
      (void)q;
      if (!scalar_traits<T>::exact && r.scale() <= 1e-10 * std::max(s0, b.scale()))
        r = Poly{};
      a = b;
      b = r;
    }
    if (!a.is_zero()) {
      const T lead = a.c.back();
      for (auto& v : a.c) v = v / lead;
    }
    return a;
  }

};

/// Rational function num/den over T.
template <typename T>
struct RatFunc {
  Poly<T> num;
  Poly<T> den = Poly<T>::constant(T(1));

  RatFunc() = default;
  RatFunc(Poly<T> n, Poly<T> d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw DomainError("RatFunc: zero denominator");
    reduce();
  }
  static RatFunc constant(const T& v) { return {Poly<T>::constant(v), Poly<T>::constant(T(1))}; }
  static RatFunc variable() { return {Poly<T>::variable(), Poly<T>::constant(T(1))}; }

  bool is_zero() const { return num.is_zero(); }

  void reduce() {
    if (num.is_zero()) {
      den = Poly<T>::constant(T(1));
      return;
    }
    const Poly<T> g = Poly<T>::gcd(num, den);
    if (g.degree() > 0) {
      num = Poly<T>::divmod(num, g).first;
      den = Poly<T>::divmod(den, g).first;
    }
    // normalize: monic denominator
    const T lead = den.c.back();
    for (auto& v : num.c) v = v / lead;
    for (auto& v : den.c) v = v / lead;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  RatFunc operator-() const { return {-num, den}; }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DomainError("RatFunc: division by zero");
    return {a.num * b.den, a.den * b.num};
  }
  friend RatFunc operator*(const RatFunc& a, const T& s) { return {a.num * s, a.den}; }

  RatFunc derivative() const {
    return {num.derivative() * den - num * den.derivative(), den * den};
  }

  T eval(const T& x) const { return num.eval(x) / den.eval(x); }

  /// Composition with another rational function: (num/den)(phi).
  RatFunc compose(const RatFunc& phi) const {
    // P(N/D) = sum p_i N^i D^{deg-i} / D^deg
    auto lift = [&phi](const Poly<T>& P) {
      const int d = std::max(P.degree(), 0);
      Poly<T> acc;
      Poly<T> Npow = Poly<T>::constant(T(1));
      std::vector<Poly<T>> Dpows(d + 1);
      Dpows[0] = Poly<T>::constant(T(1));
      for (int i = 1; i <= d; ++i) Dpows[i] = Dpows[i - 1] * phi.den;
      for (int i = 0; i <= d; ++i) {
        if (i < static_cast<int>(P.c.size()))
          acc = acc + Npow * Dpows[d - i] * P.c[i];
        if (i < d) Npow = Npow * phi.num;
      }
      return acc;  // equals P(phi) * phi.den^d
    };
    const int dn = std::max(num.degree(), 0), dd = std::max(den.degree(), 0);
    Poly<T> n = lift(num), d = lift(den);
    // rebalance the implicit phi.den powers: num has den^dn, den has den^dd
    Poly<T> Dpow = Poly<T>::constant(T(1));
    for (int i = 0; i < std::abs(dn - dd); ++i) Dpow = Dpow * phi.den;
    if (dn > dd)
      d = d * Dpow;
    else
      n = n * Dpow;
    return {std::move(n), std::move(d)};
  }
};

/// Coefficients of p in powers of (z - z0), by repeated synthetic division.
template <typename T>
std::vector<T> taylor_shift(const Poly<T>& p, const T& z0) {
  std::vector<T> b = p.c;
  std::vector<T> out;
  out.reserve(b.size());
  while (!b.empty()) {
    for (std::size_t i = b.size() - 1; i-- > 0;) b[i] = b[i] + z0 * b[i + 1];
    out.push_back(b.front());
    b.erase(b.begin());
  }
  return out;
}

}  // namespace screwon

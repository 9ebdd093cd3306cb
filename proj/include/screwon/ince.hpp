#pragma once

#include <algorithm>
#include <cctype>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "screwon/errors.hpp"
#include "screwon/polyroots.hpp"
#include "screwon/ratfunc.hpp"

namespace screwon {

/// y'' + p(z) y' + q(z) y = 0 with rational p, q.
/// T = std::complex<double> (numeric mode, tolerance 1e-10) or
/// boost cpp_rational (exact mode; singular locations must be rational).
template <typename T>
struct RationalODE {
  RatFunc<T> p;
  RatFunc<T> q;
};

using NumericODE = RationalODE<std::complex<double>>;
using ExactODE = RationalODE<boost::multiprecision::cpp_rational>;

enum class PointKind {
  ordinary,
  regular_elementary,
  regular_nonelementary,
  regular_indeterminate,  // |rho1 - rho2| numerically too close to call
  irregular
};

struct SingularPoint {
  std::complex<double> location{};  // ignored when at_infinity
  bool at_infinity = false;
  PointKind kind = PointKind::ordinary;
  // regular points: indicial exponents rho^2 + (A-1) rho + B = 0
  bool has_indicial = false;
  std::complex<double> rho1{}, rho2{};
  // irregular points: Poincare rank and species = 2 * rank
  double rank = 0.0;
  int species = 0;
};

struct SingularityReport {
  std::vector<SingularPoint> points;  // singular points only (finite then infinity)
  std::string ince_type;
};

namespace ince_detail {

template <typename T>
int first_nonzero(const std::vector<T>& c, double scale) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!scalar_traits<T>::is_zero(c[i], scale)) return static_cast<int>(i);
  return -1;  // identically zero
}

/// Pole order of num/den at z0 (positive = pole) and the leading Laurent
/// coefficient. No reduction needed: common factors cancel in the difference.
template <typename T>
std::pair<int, T> local_order(const RatFunc<T>& f, const T& z0) {
  if (f.is_zero()) return {0, T(0)};
  const auto n = taylor_shift(f.num, z0);
  const auto d = taylor_shift(f.den, z0);
  const int i = first_nonzero(n, f.num.scale());
  const int j = first_nonzero(d, f.den.scale());
  if (i < 0) return {0, T(0)};
  return {j - i, n[i] / d[j]};
}

inline std::complex<double> to_cd(const std::complex<double>& v) { return v; }
inline std::complex<double> to_cd(const boost::multiprecision::cpp_rational& v) {
  return {static_cast<double>(v), 0.0};
}

/// Elementary regular point test: |rho1 - rho2| = 1/2. In exact mode the
/// squared difference (A-1)^2 - 4B is rational and compared to 1/4 exactly.
template <typename T>
PointKind elementary_kind(const T& A, const T& B) {
  if constexpr (scalar_traits<T>::exact) {
    const T disc = (A - T(1)) * (A - T(1)) - T(4) * B;
    const T quarter = T(1) / T(4);
    return (disc == quarter || disc == -quarter) ? PointKind::regular_elementary
                                                 : PointKind::regular_nonelementary;
  } else {
    const std::complex<double> disc = to_cd(A - T(1)) * to_cd(A - T(1)) -
                                      4.0 * to_cd(B);
    const double diff = std::sqrt(std::abs(disc));
    const double d = std::fabs(diff - 0.5);
    if (d <= 1e-9) return PointKind::regular_elementary;
    if (d <= 1e-6) return PointKind::regular_indeterminate;
    return PointKind::regular_nonelementary;
  }
}

template <typename T>
void fill_indicial(SingularPoint& pt, const T& A, const T& B) {
  pt.has_indicial = true;
  const std::complex<double> a = to_cd(A), b = to_cd(B);
  const std::complex<double> disc = (a - 1.0) * (a - 1.0) - 4.0 * b;
  const std::complex<double> sq = std::sqrt(disc);
  pt.rho1 = 0.5 * (1.0 - a + sq);
  pt.rho2 = 0.5 * (1.0 - a - sq);
}

/// ODE in the chart zeta = 1/z:
///   y'' + [2/zeta - p(1/zeta)/zeta^2] y' + q(1/zeta)/zeta^4 y = 0.
template <typename T>
RationalODE<T> infinity_chart(const RationalODE<T>& ode) {
  using R = RatFunc<T>;
  const R zeta = R::variable();
  const R inv = R{Poly<T>::constant(T(1)), Poly<T>::variable()};
  const R z2 = zeta * zeta;
  RationalODE<T> out;
  out.p = R::constant(T(2)) / zeta - ode.p.compose(inv) / z2;
  out.q = ode.q.compose(inv) / (z2 * z2);
  return out;
}

template <typename T>
int degree_at_infinity(const RatFunc<T>& f) {
  if (f.is_zero()) return std::numeric_limits<int>::min();
  return f.num.degree() - f.den.degree();
}

}  // namespace ince_detail

/// Classify a finite point of the ODE.
template <typename T>
SingularPoint classify_finite(const RationalODE<T>& ode, const T& z0) {
  using namespace ince_detail;
  SingularPoint pt;
  pt.location = to_cd(z0);
  const auto [op, lp] = local_order(ode.p, z0);
  const auto [oq, lq] = local_order(ode.q, z0);
  if (op <= 0 && oq <= 0) {
    pt.kind = PointKind::ordinary;
    return pt;
  }
  if (op <= 1 && oq <= 2) {
    // regular: A = lim (z-z0) p, B = lim (z-z0)^2 q
    const T A = (op == 1) ? lp : T(0);
    const T B = (oq == 2) ? lq : T(0);
    pt.kind = elementary_kind(A, B);
    fill_indicial(pt, A, B);
    return pt;
  }
  pt.kind = PointKind::irregular;
  const int K1 = op - 2, K2 = oq - 4;
  pt.rank = 1.0 + std::max(static_cast<double>(K1), K2 / 2.0);
  pt.species = static_cast<int>(std::lround(2.0 * pt.rank));
  return pt;
}

/// Classify z = infinity via the zeta = 1/z chart; the rank at infinity is
/// 1 + max(K1, K2/2) with p = O(z^{K1}), q = O(z^{K2}).
template <typename T>
SingularPoint classify_infinity(const RationalODE<T>& ode) {
  using namespace ince_detail;
  const RationalODE<T> chart = infinity_chart(ode);
  SingularPoint pt = classify_finite(chart, T(0));
  pt.at_infinity = true;
  pt.location = {};
  if (pt.kind == PointKind::irregular) {
    const int K1 = degree_at_infinity(ode.p);
    const int K2 = degree_at_infinity(ode.q);
    double r = -std::numeric_limits<double>::infinity();
    if (K1 != std::numeric_limits<int>::min()) r = static_cast<double>(K1);
    if (K2 != std::numeric_limits<int>::min()) r = std::max(r, K2 / 2.0);
    pt.rank = 1.0 + r;
    pt.species = static_cast<int>(std::lround(2.0 * pt.rank));
  }
  return pt;
}

/// Finite singular-point candidates: roots of the two denominators.
/// Numeric mode clusters companion-matrix roots at tolerance 1e-8; exact mode
/// deflates rational roots and rejects residual irrational factors.
template <typename T>
std::vector<T> singular_candidates(const RationalODE<T>& ode);

template <>
inline std::vector<std::complex<double>> singular_candidates(
    const NumericODE& ode) {
  std::vector<std::complex<double>> all;
  for (const Poly<std::complex<double>>* den : {&ode.p.den, &ode.q.den}) {
    if (den->degree() < 1) continue;
    // companion matrix over reals when possible; here coefficients are complex
    // with (in practice) negligible imaginary parts, so split magnitudes
    std::vector<double> rc(den->c.size());
    bool real_ok = true;
    for (std::size_t i = 0; i < den->c.size(); ++i) {
      rc[i] = den->c[i].real();
      if (std::fabs(den->c[i].imag()) > 1e-12 * den->scale()) real_ok = false;
    }
    if (!real_ok)
      throw DomainError("singular_candidates: complex coefficients unsupported");
    for (const auto& r : polynomial_roots(rc, 1e-14)) all.push_back(r);
  }
  std::vector<std::complex<double>> out;
  for (const auto& [rep, mult] : cluster_roots(all, 1e-8)) out.push_back(rep);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

template <>
inline std::vector<boost::multiprecision::cpp_rational> singular_candidates(
    const ExactODE& ode) {
  using Q = boost::multiprecision::cpp_rational;
  using Z = boost::multiprecision::cpp_int;
  std::vector<Q> out;
  auto divisors = [](Z v) {
    std::vector<Z> d;
    if (v < 0) v = -v;
    if (v == 0) return d;
    for (Z i = 1; i * i <= v; ++i)
      if (v % i == 0) {
        d.push_back(i);
        if (i * i != v) d.push_back(v / i);
      }
    return d;
  };
  for (const Poly<Q>* den : {&ode.p.den, &ode.q.den}) {
    Poly<Q> g = *den;
    while (g.degree() >= 1) {
      // clear denominators so the rational-root theorem applies
      Z lcm_den = 1;
      for (const auto& c : g.c)
        lcm_den = boost::multiprecision::lcm(lcm_den, Z(denominator(c)));
      std::vector<Z> ic(g.c.size());
      for (std::size_t i = 0; i < g.c.size(); ++i)
        ic[i] = Z(numerator(g.c[i])) * (lcm_den / Z(denominator(g.c[i])));

      std::optional<Q> root;
      if (ic[0] == 0) {
        root = Q(0);
      } else {
        for (const Z& pn : divisors(ic[0])) {
          for (const Z& pd : divisors(ic.back())) {
            for (int sign : {1, -1}) {
              const Q cand = Q(pn * sign, pd);
              if (g.eval(cand) == 0) {
                root = cand;
                break;
              }
            }
            if (root) break;
          }
          if (root) break;
        }
      }
      if (!root)
        throw DomainError(
            "singular_candidates: denominator has irrational roots; use numeric mode");
      g = Poly<Q>::divmod(g, Poly<Q>(std::vector<Q>{-*root, Q(1)})).first;
      if (std::find(out.begin(), out.end(), *root) == out.end()) out.push_back(*root);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Classify every singular point (finite ones plus infinity when singular).
template <typename T>
SingularityReport classify(const RationalODE<T>& ode) {
  SingularityReport rep;
  for (const T& z0 : singular_candidates<T>(ode)) {
    SingularPoint pt = classify_finite(ode, z0);
    if (pt.kind != PointKind::ordinary) rep.points.push_back(pt);
  }
  SingularPoint inf = classify_infinity(ode);
  if (inf.kind != PointKind::ordinary) rep.points.push_back(inf);

  int elementary = 0, nonelementary = 0;
  std::map<int, int> species_count;
  for (const auto& pt : rep.points) {
    switch (pt.kind) {
      case PointKind::regular_elementary:
        ++elementary;
        break;
      case PointKind::regular_nonelementary:
        ++nonelementary;
        break;
      case PointKind::regular_indeterminate:
        throw NumericalError(
            "classify: indicial exponent difference too close to 1/2 to classify");
      case PointKind::irregular:
        ++species_count[pt.species];
        break;
      case PointKind::ordinary:
        break;
    }
  }
  std::string s = "[" + std::to_string(elementary) + "," + std::to_string(nonelementary);
  if (species_count.empty()) {
    s += ",0";
  } else {
    for (const auto& [species, count] : species_count)
      s += "," + std::to_string(count) + "_" + std::to_string(species);
  }
  s += "]";
  rep.ince_type = s;
  return rep;
}

template <typename T>
std::string ince_type(const RationalODE<T>& ode) {
  return classify(ode).ince_type;
}

/// Sum over singular points of the number of elementary regular points that
/// merged to form them (elementary: 1, nonelementary: 2, irregular of species
/// s: s + 2).
template <typename T>
int elementary_equivalent_count(const RationalODE<T>& ode) {
  int total = 0;
  for (const auto& pt : classify(ode).points) {
    switch (pt.kind) {
      case PointKind::regular_elementary:
        total += 1;
        break;
      case PointKind::regular_nonelementary:
        total += 2;
        break;
      case PointKind::irregular:
        total += pt.species + 2;
        break;
      default:
        break;
    }
  }
  return total;
}

/// Change of independent variable z = phi(w):
///   u'' + [-phi''/phi' + phi'(w) p(phi(w))] u' + phi'(w)^2 q(phi(w)) u = 0.
template <typename T>
RationalODE<T> transform_variable(const RationalODE<T>& ode, const RatFunc<T>& phi) {
  const RatFunc<T> dphi = phi.derivative();
  if (dphi.is_zero()) throw DomainError("transform_variable: phi must be nonconstant");
  const RatFunc<T> ddphi = dphi.derivative();
  RationalODE<T> out;
  out.p = -(ddphi / dphi) + dphi * ode.p.compose(phi);
  out.q = dphi * dphi * ode.q.compose(phi);
  return out;
}

/// The quadratic substitution z = w^2 (doubles the rank of half-integer
/// irregular points at infinity).
template <typename T>
RationalODE<T> substitute_square(const RationalODE<T>& ode) {
  const RatFunc<T> w2{Poly<T>(std::vector<T>{T(0), T(0), T(1)}),
                      Poly<T>::constant(T(1))};
  return transform_variable(ode, w2);
}

/// Mobius map w = (a z + b)/(c z + d) acting on the points: the new equation
/// is obtained from z = phi(w) with phi the inverse map (d w - b)/(-c w + a).
template <typename T>
RationalODE<T> mobius_transform(const RationalODE<T>& ode, const T& a, const T& b,
                                const T& c, const T& d) {
  if (scalar_traits<T>::is_zero(a * d - b * c, 1.0))
    throw DomainError("mobius_transform: singular map (ad - bc = 0)");
  const RatFunc<T> phi{Poly<T>(std::vector<T>{-b, d}), Poly<T>(std::vector<T>{a, -c})};
  return transform_variable(ode, phi);
}

/// Gauge change y = F a with F = z^mu R1 exp(R2):
///   p -> p + 2 F'/F,  q -> q + (F'/F)' + (F'/F)^2 + p F'/F.
template <typename T>
RationalODE<T> gauge_transform(const RationalODE<T>& ode, int mu,
                               const RatFunc<T>& R1, const RatFunc<T>& R2) {
  if (R1.is_zero()) throw DomainError("gauge_transform: R1 must be nonzero");
  const RatFunc<T> logder = RatFunc<T>{Poly<T>::constant(T(mu)), Poly<T>::variable()} +
                            R1.derivative() / R1 + R2.derivative();
  RationalODE<T> out;
  out.p = ode.p + logder * T(2);
  out.q = ode.q + logder.derivative() + logder * logder + ode.p * logder;
  return out;
}

}  // namespace screwon

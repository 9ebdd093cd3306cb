#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "screwon/errors.hpp"
#include "screwon/params.hpp"

namespace screwon {

/// Coefficient-field hooks for WeylElement. The default covers
/// std::complex<double>; an exact field (e.g. Gaussian rationals) specializes
/// these to make every check exact.
template <typename C>
struct weyl_coeff_traits {
  static double abs_value(const C& c) { return std::abs(c); }
  static C conjugate(const C& c) { return std::conj(c); }
  static bool negligible(const C& c, double scale) {
    return std::abs(c) <= 1e-14 * scale;
  }
  static C from_int(long long v) { return C(static_cast<double>(v), 0.0); }
};

/// Monomial x^ax y^ay d_x^dx d_y^dy in normal order (derivatives rightmost).
struct WeylMono {
  int ax = 0, ay = 0, dx = 0, dy = 0;

  /// graded-lex: derivative multi-order first, then the polynomial monomial
  friend bool operator<(const WeylMono& a, const WeylMono& b) {
    const int da = a.dx + a.dy, db = b.dx + b.dy;
    if (da != db) return da < db;
    if (a.dx != b.dx) return a.dx < b.dx;
    const int pa = a.ax + a.ay, pb = b.ax + b.ay;
    if (pa != pb) return pa < pb;
    if (a.ax != b.ax) return a.ax < b.ax;
    return a.ay < b.ay;
  }
  friend bool operator==(const WeylMono& a, const WeylMono& b) {
    return a.ax == b.ax && a.ay == b.ay && a.dx == b.dx && a.dy == b.dy;
  }
};

/// An element of the Weyl algebra on (x, y): a finite sum of polynomial
/// coefficients times mixed partial derivatives, kept in canonical normal
/// order. Immutable value semantics; products use the Leibniz rule exactly.
template <typename C = std::complex<double>>
class WeylElement {
 public:
  using Coeff = C;
  using Traits = weyl_coeff_traits<C>;
  using TermMap = std::map<WeylMono, C>;

  WeylElement() = default;

  static WeylElement monomial(const C& coeff, int ax, int ay, int dx, int dy) {
    WeylElement e;
    e.terms_[{ax, ay, dx, dy}] = coeff;
    e.prune();
    return e;
  }
  static WeylElement identity(const C& coeff) {
    return monomial(coeff, 0, 0, 0, 0);
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Largest coefficient magnitude (the scale for relative comparisons).
  double scale() const {
    double s = 0.0;
    for (const auto& [m, c] : terms_) s = std::max(s, Traits::abs_value(c));
    return s;
  }

  /// True when the element is a multiple of the identity.
  bool is_scalar() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == WeylMono{};
  }
  C scalar_value() const {
    if (terms_.empty()) return C{};
    if (!is_scalar()) throw DomainError("WeylElement: not a scalar multiple of I");
    return terms_.begin()->second;
  }

  WeylElement operator+(const WeylElement& o) const {
    WeylElement r = *this;
    for (const auto& [m, c] : o.terms_) r.terms_[m] += c;
    r.prune();
    return r;
  }
  WeylElement operator-(const WeylElement& o) const {
    WeylElement r = *this;
    for (const auto& [m, c] : o.terms_) r.terms_[m] -= c;
    r.prune();
    return r;
  }
  WeylElement operator-() const {
    WeylElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  WeylElement operator*(const C& s) const {
    WeylElement r = *this;
    for (auto& [m, c] : r.terms_) c = c * s;
    r.prune();
    return r;
  }

  /// Normal-ordered product: move each derivative past the polynomial part of
  /// the right factor with d^n (x^a f) = sum_i C(n,i) (a)_i x^{a-i} d^{n-i} f.
  WeylElement operator*(const WeylElement& o) const {
    WeylElement r;
    for (const auto& [m1, c1] : terms_) {
      for (const auto& [m2, c2] : o.terms_) {
        const C c12 = c1 * c2;
        const int imax = std::min(m1.dx, m2.ax);
        const int jmax = std::min(m1.dy, m2.ay);
        for (int i = 0; i <= imax; ++i) {
          const long long wx = binom(m1.dx, i) * falling(m2.ax, i);
          for (int j = 0; j <= jmax; ++j) {
            const long long wy = binom(m1.dy, j) * falling(m2.ay, j);
            const WeylMono m{m1.ax + m2.ax - i, m1.ay + m2.ay - j,
                             m1.dx + m2.dx - i, m1.dy + m2.dy - j};
            r.terms_[m] += c12 * Traits::from_int(wx * wy);
          }
        }
      }
    }
    r.prune();
    return r;
  }

  /// Formal adjoint under (c x^a y^b d^alpha)^dagger = conj(c) (-d)^alpha x^a y^b.
  WeylElement adjoint() const {
    WeylElement r;
    for (const auto& [m, c] : terms_) {
      const C cc = ((m.dx + m.dy) % 2 == 0 ? Traits::conjugate(c)
                                           : -Traits::conjugate(c));
      r = r + monomial(cc, 0, 0, m.dx, m.dy) * monomial(Traits::from_int(1),
                                                        m.ax, m.ay, 0, 0);
    }
    return r;
  }

  /// Apply to a polynomial in (x, y): map (power_x, power_y) -> coefficient.
  using Polynomial = std::map<std::pair<int, int>, C>;
  Polynomial apply(const Polynomial& poly) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      for (const auto& [pw, pc] : poly) {
        const auto [u, v] = pw;
        if (u < m.dx || v < m.dy) continue;
        const C w = c * pc * Traits::from_int(falling(u, m.dx) * falling(v, m.dy));
        out[{m.ax + u - m.dx, m.ay + v - m.dy}] += w;
      }
    }
    for (auto it = out.begin(); it != out.end();)
      it = (Traits::abs_value(it->second) == 0.0) ? out.erase(it) : std::next(it);
    return out;
  }

 private:
  static long long binom(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }
  static long long falling(int n, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r *= (n - i);
    return r;
  }

  void prune() {
    const double s = scale();
    if (s == 0.0) {
      terms_.clear();
      return;
    }
    for (auto it = terms_.begin(); it != terms_.end();)
      it = Traits::negligible(it->second, s) ? terms_.erase(it) : std::next(it);
  }

  TermMap terms_;
};

template <typename C>
WeylElement<C> commutator(const WeylElement<C>& A, const WeylElement<C>& B) {
  return A * B - B * A;
}

/// The seven generators of the step-3 nilpotent algebra in the irreducible
/// (x, y) sector, with p_z reduced to a scalar:
///   L1 = k y,  L2 = -k x,  L3 = -m k I,  K3 = -k I,
///   S1 = -i hbar d_x - (lambda/2) m k y,
///   S2 = -i hbar d_y + (lambda/2) m k x,
///   S3 = (pz - k/lambda) I - (lambda k / 2)(x^2 + y^2).
template <typename C = std::complex<double>>
struct NilpotentGenerators {
  std::array<WeylElement<C>, 3> L;
  std::array<WeylElement<C>, 3> S;
  WeylElement<C> K3;
  C i_hbar;      // i*hbar as a coefficient
  C lambda, k, m, hbar, pz;
};

/// Build the generators from scalar parameter values (exact when C is exact).
template <typename C>
NilpotentGenerators<C> build_generators(const C& lambda, const C& k, const C& m,
                                        const C& hbar, const C& pz, const C& i_unit) {
  using E = WeylElement<C>;
  if (weyl_coeff_traits<C>::abs_value(lambda) == 0.0)
    throw DomainError("build_generators: lambda must be nonzero");
  NilpotentGenerators<C> g;
  g.lambda = lambda;
  g.k = k;
  g.m = m;
  g.hbar = hbar;
  g.pz = pz;
  g.i_hbar = i_unit * hbar;
  const C half_lmk = lambda * m * k / weyl_coeff_traits<C>::from_int(2);
  const C half_lk = lambda * k / weyl_coeff_traits<C>::from_int(2);
  g.L[0] = E::monomial(k, 0, 1, 0, 0);
  g.L[1] = E::monomial(-k, 1, 0, 0, 0);
  g.L[2] = E::identity(-m * k);
  g.K3 = E::identity(-k);
  g.S[0] = E::monomial(-g.i_hbar, 0, 0, 1, 0) + E::monomial(-half_lmk, 0, 1, 0, 0);
  g.S[1] = E::monomial(-g.i_hbar, 0, 0, 0, 1) + E::monomial(half_lmk, 1, 0, 0, 0);
  g.S[2] = E::identity(pz - k / lambda) + E::monomial(-half_lk, 2, 0, 0, 0) +
           E::monomial(-half_lk, 0, 2, 0, 0);
  return g;
}

inline NilpotentGenerators<std::complex<double>> build_generators(
    const ModelParams& p) {
  using C = std::complex<double>;
  return build_generators<C>(C(p.lambda), C(p.k), C(p.m), C(p.hbar), C(p.pz),
                             C(0.0, 1.0));
}

/// One verified relation: a label, the residual scale, and (when relevant)
/// which operator ordering matched.
struct RelationReport {
  std::string relation;
  double residual = 0.0;
  std::string matched_ordering;  // empty when not an ordering question
};

namespace weyl_detail {

template <typename C>
double rel_residual(const WeylElement<C>& got, const WeylElement<C>& want) {
  const double s = std::max({got.scale(), want.scale(), 1e-300});
  return (got - want).scale() / s;
}

inline constexpr int eps(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace weyl_detail

/// Check the full commutation table:
///   [L_a, L_b] = 0, [S_a, S_b] = i hbar lambda eps_abc L_c,
///   [S_a, L_b] = -i hbar eps_abc K_c with K = (0, 0, -k).
template <typename C>
std::vector<RelationReport> commutation_table_check(const NilpotentGenerators<C>& g) {
  using E = WeylElement<C>;
  std::vector<RelationReport> out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      out.push_back({"[L" + std::to_string(a + 1) + ",L" + std::to_string(b + 1) + "]",
                     commutator(g.L[a], g.L[b]).scale(), ""});
      // [S_a, S_b] = i hbar lambda eps_abc L_c
      E want;
      for (int c = 0; c < 3; ++c) {
        const int e = weyl_detail::eps(a, b, c);
        if (e != 0)
          want = want + g.L[c] * (g.i_hbar * g.lambda *
                                  weyl_coeff_traits<C>::from_int(e));
      }
      out.push_back({"[S" + std::to_string(a + 1) + ",S" + std::to_string(b + 1) +
                         "]-i*hbar*lambda*eps*L",
                     weyl_detail::rel_residual(commutator(g.S[a], g.S[b]), want), ""});
      // [S_a, L_b] = -i hbar eps_ab3 K_3  (K_1 = K_2 = 0)
      E wantSL;
      const int e3 = weyl_detail::eps(a, b, 2);
      if (e3 != 0)
        wantSL = g.K3 * (-g.i_hbar * weyl_coeff_traits<C>::from_int(e3));
      out.push_back({"[S" + std::to_string(a + 1) + ",L" + std::to_string(b + 1) +
                         "]+i*hbar*eps*K",
                     weyl_detail::rel_residual(commutator(g.S[a], g.L[b]), wantSL),
                     ""});
    }
  return out;
}

struct NilpotencyReport {
  double max_double_noncentral = 0.0;  // residual of [[G,H],J] off the center
  double max_triple = 0.0;             // residual of [[[G,H],J],M]
  int checked_double = 0;
  int checked_triple = 0;
};

/// Step-3 nilpotency: every [[G,H],J] is a multiple of the identity and every
/// thrice-iterated bracket vanishes. Residuals are relative to the operand scale.
template <typename C>
NilpotencyReport verify_nilpotency(const NilpotentGenerators<C>& g) {
  using E = WeylElement<C>;
  std::array<E, 7> gen{g.L[0], g.L[1], g.L[2], g.S[0], g.S[1], g.S[2], g.K3};
  double gscale = 0.0;
  for (const auto& e : gen) gscale = std::max(gscale, e.scale());
  NilpotencyReport rep;
  for (const auto& A : gen)
    for (const auto& B : gen) {
      const E ab = commutator(A, B);
      for (const auto& Cc : gen) {
        const E abc = commutator(ab, Cc);
        ++rep.checked_double;
        E noncentral = abc;
        if (!abc.is_zero() && abc.is_scalar()) noncentral = E{};
        if (!abc.is_scalar()) {
          // drop the scalar part, measure what is left
          E scalar_part;
          auto it = abc.terms().find(WeylMono{});
          if (it != abc.terms().end())
            scalar_part = E::identity(it->second);
          noncentral = abc - scalar_part;
        }
        rep.max_double_noncentral = std::max(
            rep.max_double_noncentral,
            noncentral.scale() / std::max(gscale * gscale * gscale, 1e-300));
        for (const auto& D : gen) {
          ++rep.checked_triple;
          rep.max_triple = std::max(
              rep.max_triple,
              commutator(abc, D).scale() /
                  std::max(gscale * gscale * gscale * gscale, 1e-300));
        }
      }
    }
  return rep;
}

struct CasimirReport {
  double max_L3_commutator = 0.0;
  double max_casimir_commutator = 0.0;
  /// distance of (c k^2 - (k^2 m^2/2 - k^2/lambda^2) I) from (k pz/lambda) I
  double casimir_shift_residual = 0.0;
};

/// L3 and c k^2 = (L1^2 + L2^2 + L3^2)/2 + k S3 / lambda commute with every
/// generator; on this sector c k^2 = (k^2 m^2/2 - k^2/lambda^2 + k pz/lambda) I.
template <typename C>
CasimirReport casimir_check(const NilpotentGenerators<C>& g) {
  using E = WeylElement<C>;
  using T = weyl_coeff_traits<C>;
  const C half = C(1) / T::from_int(2);
  E ck2;
  for (int a = 0; a < 3; ++a) ck2 = ck2 + g.L[a] * g.L[a] * half;
  ck2 = ck2 + g.S[2] * (g.k / g.lambda);

  std::array<E, 7> gen{g.L[0], g.L[1], g.L[2], g.S[0], g.S[1], g.S[2], g.K3};
  CasimirReport rep;
  const double cscale = std::max(ck2.scale(), 1e-300);
  for (const auto& G : gen) {
    const double gs = std::max(G.scale(), 1e-300);
    rep.max_L3_commutator =
        std::max(rep.max_L3_commutator,
                 commutator(g.L[2], G).scale() / (g.L[2].scale() * gs));
    rep.max_casimir_commutator = std::max(
        rep.max_casimir_commutator, commutator(ck2, G).scale() / (cscale * gs));
  }
  // value check: ck2 - (k^2 m^2/2 - k^2/lambda^2) I should be (k pz/lambda) I
  const C base = g.k * g.k * g.m * g.m * half - g.k * g.k / (g.lambda * g.lambda);
  const E shifted = ck2 - E::identity(base);
  rep.casimir_shift_residual =
      (shifted - E::identity(g.k * g.pz / g.lambda)).scale();
  return rep;
}

struct HeisenbergReport {
  // dS_a/dt = lambda eps_abc S_b L_c: residual for the plain S_b L_c ordering
  // and for the symmetrized (S_b L_c + L_c S_b)/2 ordering
  std::array<double, 3> S_plain{};
  std::array<double, 3> S_symmetrized{};
  std::array<double, 3> L_residual{};  // dL_a/dt = eps_abc K_b S_c (K central)
  std::string matched_ordering;
};

/// Heisenberg equations from H = (S_a^2 + L_a^2)/2 + k S3/lambda + k^2/(2 lambda^2):
/// compares (1/i hbar)[S_a, H] against both operator orderings of
/// lambda eps_abc S_b L_c, and (1/i hbar)[L_a, H] against eps_abc K_b S_c.
template <typename C>
HeisenbergReport heisenberg_check(const NilpotentGenerators<C>& g) {
  using E = WeylElement<C>;
  using T = weyl_coeff_traits<C>;
  const C half = C(1) / T::from_int(2);
  E H;
  for (int a = 0; a < 3; ++a)
    H = H + (g.S[a] * g.S[a] + g.L[a] * g.L[a]) * half;
  H = H + g.S[2] * (g.k / g.lambda) +
      E::identity(g.k * g.k / (T::from_int(2) * g.lambda * g.lambda));

  HeisenbergReport rep;
  const std::array<C, 3> K{C{}, C{}, -g.k};
  for (int a = 0; a < 3; ++a) {
    const E dS = commutator(g.S[a], H) * (C(1) / g.i_hbar);
    E plain, sym;
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const int e = weyl_detail::eps(a, b, c);
        if (e == 0) continue;
        const C w = g.lambda * T::from_int(e);
        plain = plain + g.S[b] * g.L[c] * w;
        sym = sym + (g.S[b] * g.L[c] + g.L[c] * g.S[b]) * (w * half);
      }
    rep.S_plain[a] = weyl_detail::rel_residual(dS, plain);
    rep.S_symmetrized[a] = weyl_detail::rel_residual(dS, sym);

    const E dL = commutator(g.L[a], H) * (C(1) / g.i_hbar);
    E wantL;
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const int e = weyl_detail::eps(a, b, c);
        if (e == 0 || T::abs_value(K[b]) == 0.0) continue;
        wantL = wantL + g.S[c] * (K[b] * T::from_int(e));
      }
    rep.L_residual[a] = weyl_detail::rel_residual(dL, wantL);
  }
  const double plain_max = std::max({rep.S_plain[0], rep.S_plain[1], rep.S_plain[2]});
  const double sym_max =
      std::max({rep.S_symmetrized[0], rep.S_symmetrized[1], rep.S_symmetrized[2]});
  rep.matched_ordering = (sym_max <= plain_max) ? "symmetrized" : "plain";
  return rep;
}

/// Hermiticity under the formal adjoint, relative residual per generator.
template <typename C>
std::vector<RelationReport> hermiticity_check(const NilpotentGenerators<C>& g) {
  std::vector<RelationReport> out;
  const std::array<std::pair<std::string, const WeylElement<C>*>, 7> items{
      std::make_pair(std::string("L1"), &g.L[0]), {"L2", &g.L[1]},
      {"L3", &g.L[2]},                            {"S1", &g.S[0]},
      {"S2", &g.S[1]},                            {"S3", &g.S[2]},
      {"K3", &g.K3}};
  for (const auto& [name, e] : items)
    out.push_back({name + " hermitian",
                   weyl_detail::rel_residual(e->adjoint(), *e), ""});
  return out;
}

}  // namespace screwon

#pragma once

// Rational torsion: the reduction bound, Nagell-Lutz enumeration with
// Mazur-capped order checks, division-polynomial root tests, and replays of
// the congruence obstructions for orders 2, 3, 5 and 7 on the family.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecfam/curve.hpp"
#include "ecfam/errors.hpp"
#include "ecfam/family.hpp"
#include "ecfam/finite_field.hpp"
#include "ecfam/integer.hpp"
#include "ecfam/number_theory.hpp"
#include "ecfam/polynomial.hpp"

namespace ecfam {

/// Largest order of a rational torsion point (Mazur).
inline constexpr unsigned kMazurOrderCap = 12;

/// Group orders that can occur for E(Q)_tors (cyclic 1..10, 12; Z/2 x Z/2N up to 16).
inline bool is_mazur_admissible_group_order(std::size_t n) {
  return (n >= 1 && n <= 10) || n == 12 || n == 16;
}

struct ReductionEvidence {
  std::uint64_t prime = 0;
  std::uint64_t count = 0;

  friend bool operator==(const ReductionEvidence&, const ReductionEvidence&) = default;
};

struct ReductionBound {
  Integer bound;
  std::vector<ReductionEvidence> primes_used;
};

/// gcd of #E(F_ell) over the first num_primes odd primes of good reduction.
inline ReductionBound torsion_order_bound(const Curve& curve, unsigned num_primes) {
  if (num_primes == 0) throw InvalidParameter("num_primes must be at least 1");
  ReductionBound out;
  out.bound = 0;
  const Integer disc = curve.discriminant();
  for (std::uint64_t ell = 3; out.primes_used.size() < num_primes; ell = to_u64(next_prime(from_u64(ell)))) {
    if (mod_u64(disc, ell) == 0) continue;
    const std::uint64_t n = count_points(reduce_curve(curve, ell));
    out.primes_used.push_back({ell, n});
    out.bound = gcd(out.bound, from_u64(n));
  }
  return out;
}

/// Order of p if it is at most cap, else nullopt (infinite order when cap >= 12).
inline std::optional<unsigned> finite_order(const Curve& curve, const Point& p, unsigned cap = kMazurOrderCap) {
  require_on_curve(curve, p);
  Point acc = p;
  for (unsigned n = 1; n <= cap; ++n) {
    if (acc.is_infinity()) return n;
    acc = detail::add_unchecked(curve, acc, p);
  }
  return std::nullopt;
}

/// Division polynomials in x alone: f_n = psi_n for odd n and psi_n / 2y
/// for even n, with y^2 replaced by x^3 + bx + c. The nonzero roots of f_n
/// for n >= 3 are the x-coordinates of the nonzero n-torsion points other
/// than 2-torsion.
inline Polynomial division_polynomial(const Curve& curve, unsigned n) {
  const Integer& b = curve.b();
  const Integer& c = curve.c();
  const Polynomial cubic(std::vector<Integer>{c, b, 0, 1});
  const Polynomial cubic_sq16 = Integer(16) * (cubic * cubic);
  std::vector<Polynomial> f;
  f.push_back(Polynomial());
  f.push_back(Polynomial::constant(1));
  f.push_back(Polynomial::constant(1));
  f.push_back(Polynomial(std::vector<Integer>{Integer(-b * b), Integer(12 * c), Integer(6 * b), 0, 3}));
  f.push_back(Polynomial(std::vector<Integer>{Integer(-2 * (8 * c * c + b * b * b)), Integer(-8 * b * c),
                                              Integer(-10 * b * b), Integer(40 * c), Integer(10 * b), 0, 2}));
  for (unsigned k = 5; k <= n; ++k) {
    const unsigned h = k / 2;
    if (k % 2 == 1) {
      const Polynomial lhs = f[h + 2] * f[h] * f[h] * f[h];
      const Polynomial rhs = f[h - 1] * f[h + 1] * f[h + 1] * f[h + 1];
      f.push_back(h % 2 == 0 ? cubic_sq16 * lhs - rhs : lhs - cubic_sq16 * rhs);
    } else {
      f.push_back(f[h] * (f[h + 2] * f[h - 1] * f[h - 1] - f[h - 2] * f[h + 1] * f[h + 1]));
    }
  }
  return f.at(n);
}

struct DivisionPolyVerdict {
  unsigned order = 0;
  Polynomial polynomial;               // the polynomial tested
  std::vector<Integer> integer_roots;  // all of them
  std::vector<Point> rational_points;  // points over those roots (y^2 a square)

  /// No rational point of exact order `order`.
  bool excludes_order() const { return rational_points.empty(); }
  bool has_integer_root() const { return !integer_roots.empty(); }
};

/// Integer-root test of x^3 + bx + c (n = 2) or f_n (n = 3, 5, 7). Torsion
/// points are integral, so "no root" excludes rational points of order n.
inline DivisionPolyVerdict division_poly_has_integer_root(const Curve& curve, unsigned n) {
  if (n != 2 && n != 3 && n != 5 && n != 7) throw UnsupportedOrder(n);
  DivisionPolyVerdict v;
  v.order = n;
  v.polynomial = n == 2 ? Polynomial(std::vector<Integer>{curve.c(), curve.b(), 0, 1}) : division_polynomial(curve, n);
  v.integer_roots = integer_roots(v.polynomial);
  for (const auto& x : v.integer_roots) {
    if (auto y = exact_sqrt(curve.rhs(x))) {
      v.rational_points.emplace_back(x, *y);
      if (*y != 0) v.rational_points.emplace_back(x, Integer(-*y));
    }
  }
  return v;
}

struct TorsionGroup {
  std::vector<Point> integral_candidates;  // integral (x, y) on the curve with y = 0 or y^2 | Delta
  std::vector<Point> points;               // the torsion subgroup, O first, sorted
  std::size_t order = 1;
  std::vector<Point> generators;
  std::string structure = "trivial";
};

/// Nagell-Lutz: every rational torsion point is integral with y = 0 or
/// y^2 | Delta; candidates are kept if n P = O for some n <= 12.
inline TorsionGroup nagell_lutz_torsion(const Curve& curve) {
  TorsionGroup g;
  const Integer disc = curve.discriminant();
  std::vector<Integer> ys{0};
  for (const auto& y : square_divisor_roots(factor_or_throw(disc))) ys.push_back(y);
  for (const auto& y : ys) {
    const Polynomial shifted(std::vector<Integer>{Integer(curve.c() - y * y), curve.b(), 0, 1});
    for (const auto& x : integer_roots(shifted)) {
      g.integral_candidates.emplace_back(x, y);
      if (y != 0) g.integral_candidates.emplace_back(x, Integer(-y));
    }
  }
  std::sort(g.integral_candidates.begin(), g.integral_candidates.end());

  std::map<std::size_t, std::vector<Point>> by_order;
  g.points.push_back(Point::infinity());
  for (const auto& p : g.integral_candidates) {
    if (auto n = finite_order(curve, p)) {
      g.points.push_back(p);
      by_order[*n].push_back(p);
    }
  }
  g.order = g.points.size();
  if (g.order == 1) return g;

  const auto& [max_order, max_points] = *by_order.rbegin();
  const std::size_t two_torsion = by_order.count(2) ? by_order.at(2).size() : 0;
  g.generators.push_back(max_points.front());
  if (two_torsion == 3) {
    const Point half = scalar_mul(curve, Integer(static_cast<unsigned long>(max_order / 2)), max_points.front());
    for (const auto& t : by_order.at(2)) {
      if (t != half) {
        g.generators.push_back(t);
        break;
      }
    }
    g.structure = "Z/2Z x Z/" + std::to_string(max_order) + "Z";
  } else {
    g.structure = "Z/" + std::to_string(max_order) + "Z";
  }
  return g;
}

enum class ObstructionVerdict { obstructed, hypothesis_not_met, not_obstructed };

inline const char* to_string(ObstructionVerdict v) {
  switch (v) {
    case ObstructionVerdict::obstructed: return "obstructed";
    case ObstructionVerdict::hypothesis_not_met: return "hypothesis_not_met";
    case ObstructionVerdict::not_obstructed: return "not_obstructed";
  }
  return "?";
}

struct LemmaReplay {
  unsigned order = 0;
  ObstructionVerdict verdict = ObstructionVerdict::hypothesis_not_met;
  std::string detail;
};

/// Replays the congruence argument excluding a point of order n on E_m.
inline LemmaReplay lemma_obstruction(const FamilyParams& params, unsigned n) {
  if (n != 2 && n != 3 && n != 5 && n != 7) throw UnsupportedOrder(n);
  LemmaReplay out;
  out.order = n;
  const Integer& m = params.m;
  const Integer d = params.pqr();

  if (n == 2) {
    // A root of x^3 - m^2 x + D^2 is integral and divides D^2.
    const Integer d2 = d * d;
    const Integer m2 = m * m;
    Factorization f{{params.p, 2}, {params.q, 2}, {params.r, 2}};
    std::sort(f.begin(), f.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    const auto divs = divisors(f);
    for (const auto& dv : divs) {
      for (int s : {1, -1}) {
        const Integer x = s * dv;
        if (x * x * x - m2 * x + d2 == 0) {
          out.verdict = ObstructionVerdict::not_obstructed;
          out.detail = "x = " + x.get_str() + " is a root of x^3 - m^2 x + (pqr)^2";
          return out;
        }
      }
    }
    out.verdict = ObstructionVerdict::obstructed;
    out.detail = "none of the " + std::to_string(2 * divs.size()) + " signed divisors of (pqr)^2 is a root of x^3 - m^2 x + (pqr)^2";
    return out;
  }

  if (n == 3) {
    const std::uint64_t m3 = mod_u64(m, 3);
    if (m3 == 0) {
      out.detail = "needs m != 0 (mod 3)";
      return out;
    }
    const std::int64_t mm = static_cast<std::int64_t>(m3);
    const std::int64_t dd = static_cast<std::int64_t>(mod_u64(d, 3));
    for (std::int64_t x = 0; x < 3; ++x) {
      const std::int64_t v = 3 * x * x * x * x - 6 * mm * mm * x * x + 12 * dd * dd * x - mm * mm * mm * mm;
      if (((v % 3) + 3) % 3 == 0) {
        out.verdict = ObstructionVerdict::not_obstructed;
        out.detail = "3x^4 - 6m^2x^2 + 12(pqr)^2x - m^4 vanishes mod 3 at x = " + std::to_string(x);
        return out;
      }
    }
    out.verdict = ObstructionVerdict::obstructed;
    out.detail = "3x^4 - 6m^2x^2 + 12(pqr)^2x - m^4 = -m^4 != 0 (mod 3) for every x";
    return out;
  }

  const std::uint64_t m4 = mod_u64(m, 4);
  const std::uint64_t m8 = mod_u64(m, 8);
  if (n == 5) {
    if (m4 != 2) {
      out.detail = "needs m = 2 (mod 4)";
      return out;
    }
    // x even forces m = 0 (mod 4); x odd forces (m^2 + 1)^8 = 0 (mod 4).
    const bool even_closed = m4 != 0;
    const bool odd_closed = detail::pow_mod((m4 * m4 + 1) % 4, 8, 4) != 0;
    out.verdict = even_closed && odd_closed ? ObstructionVerdict::obstructed : ObstructionVerdict::not_obstructed;
    out.detail = std::string("x even: m = ") + std::to_string(m4) + " (mod 4), not 0; x odd: (m^2+1)^8 = " +
                 std::to_string(detail::pow_mod((m4 * m4 + 1) % 4, 8, 4)) + " (mod 4), not 0";
    return out;
  }

  // n == 7
  if (m8 != 2) {
    out.detail = "needs m = 2 (mod 8)";
    return out;
  }
  // x even forces m = 0 (mod 4); x odd forces
  // (1+m^2)^16 [4(3-m^2)^2 (1+m^2)^6 + (1+m^2)^8] = 0 (mod 8).
  const std::uint64_t u = (1 + m8 * m8) % 8;
  const std::uint64_t w = (3 + 8 * 8 - m8 * m8) % 8;
  const std::uint64_t odd_value =
      detail::pow_mod(u, 16, 8) * ((4 * w * w * detail::pow_mod(u, 6, 8) + detail::pow_mod(u, 8, 8)) % 8) % 8;
  const bool even_closed = m4 != 0;
  const bool odd_closed = odd_value != 0;
  out.verdict = even_closed && odd_closed ? ObstructionVerdict::obstructed : ObstructionVerdict::not_obstructed;
  out.detail = "x even: m = " + std::to_string(m4) + " (mod 4), not 0; x odd: (1+m^2)^16[4(3-m^2)^2(1+m^2)^6 + (1+m^2)^8] = " +
               std::to_string(odd_value) + " (mod 8)";
  return out;
}

struct TorsionReport {
  Integer bound_from_reduction;
  std::vector<ReductionEvidence> primes_used;
  std::vector<Point> integral_candidates;
  std::size_t torsion_order = 1;
  std::vector<Point> points;
  std::vector<Point> generators;
  std::string structure;
  std::map<unsigned, DivisionPolyVerdict> division_poly;
  std::map<unsigned, LemmaReplay> lemma_obstructions;  // family curves only

  bool trivial() const { return torsion_order == 1; }
  bool reduction_route_trivial() const { return bound_from_reduction == 1; }
  bool division_poly_route_trivial() const {
    return std::all_of(division_poly.begin(), division_poly.end(), [](const auto& kv) { return kv.second.excludes_order(); });
  }
};

/// The reduction bound keeps adding primes (up to this many) while it still
/// exceeds the Nagell-Lutz order.
inline constexpr unsigned kMaxReductionPrimes = 64;

/// Full torsion analysis. num_reduction_primes is the minimum number of
/// good primes used for the reduction bound.
inline TorsionReport analyze_torsion(const Curve& curve, unsigned num_reduction_primes,
                                     const FamilyParams* params = nullptr) {
  TorsionReport rep;
  TorsionGroup group = nagell_lutz_torsion(curve);
  rep.integral_candidates = std::move(group.integral_candidates);
  rep.points = std::move(group.points);
  rep.torsion_order = group.order;
  rep.generators = std::move(group.generators);
  rep.structure = std::move(group.structure);

  unsigned n = num_reduction_primes;
  ReductionBound rb = torsion_order_bound(curve, n);
  while (rb.bound != rep.torsion_order && n < kMaxReductionPrimes) {
    n = std::min(kMaxReductionPrimes, 2 * n);
    rb = torsion_order_bound(curve, n);
  }
  rep.bound_from_reduction = rb.bound;
  rep.primes_used = std::move(rb.primes_used);

  if (!is_mazur_admissible_group_order(rep.torsion_order)) {
    throw std::logic_error("torsion order " + std::to_string(rep.torsion_order) + " is not admissible");
  }
  if (!mpz_divisible_ui_p(rep.bound_from_reduction.get_mpz_t(), rep.torsion_order)) {
    throw std::logic_error("torsion order does not divide the reduction bound");
  }

  for (unsigned order : {2U, 3U, 5U, 7U}) rep.division_poly.emplace(order, division_poly_has_integer_root(curve, order));
  if (params != nullptr) {
    for (unsigned order : {2U, 3U, 5U, 7U}) rep.lemma_obstructions.emplace(order, lemma_obstruction(*params, order));
  }
  return rep;
}

}  // namespace ecfam

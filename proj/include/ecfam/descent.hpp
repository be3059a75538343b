#pragma once

// Membership in 2E(Q) by exact halving, E/2E class certificates for the
// canonical points, and rank lower bounds (>= 2, and a search for >= 3).
//
// A point P lies in 2E(Q) iff some rational R has 2R = P. The x-coordinates
// of such R are the rational roots of
//
//   x^4 - 4 x0 x^3 - 2b x^2 - (8c + 4b x0) x + (b^2 - 4c x0),   x0 = x(P),
//
// so membership is decided by rational_roots() on that quartic and lifting
// each root whose x^3 + bx + c is a rational square. The congruence
// obstructions for A_m, B_m and A_m + B_m are replayed alongside as a second,
// independent route.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ecfam/curve.hpp"
#include "ecfam/errors.hpp"
#include "ecfam/family.hpp"
#include "ecfam/integer.hpp"
#include "ecfam/polynomial.hpp"
#include "ecfam/torsion.hpp"

namespace ecfam {

struct HalvingQuartic {
  std::array<Integer, 5> coefficients;  // x^4 down to x^0; primitive, leading > 0
  Point source_point;

  Polynomial polynomial() const {
    return Polynomial(std::vector<Integer>{coefficients[4], coefficients[3], coefficients[2], coefficients[1], coefficients[0]});
  }
};

/// The primitive integer quartic whose roots are x(R) for 2R = target
/// (over the algebraic closure).
inline HalvingQuartic halving_quartic(const Curve& curve, const Point& target) {
  require_on_curve(curve, target);
  if (target.is_infinity()) throw InfinityTarget();
  const Integer n = target.x().get_num();
  const Integer d = target.x().get_den();
  const Integer& b = curve.b();
  const Integer& c = curve.c();
  const Polynomial raw(std::vector<Integer>{Integer(b * b * d - 4 * c * n), Integer(-(8 * c * d + 4 * b * n)),
                                            Integer(-2 * b * d), Integer(-4 * n), d});
  const Polynomial prim = raw.primitive_part();
  HalvingQuartic q;
  for (std::size_t i = 0; i < 5; ++i) q.coefficients[i] = prim.coeff(4 - i);
  q.source_point = target;
  return q;
}

struct HalvingResult {
  HalvingQuartic quartic;
  std::vector<Rational> roots;     // rational roots of the quartic
  std::vector<Point> preimages;    // every R with 2R = target, sorted
};

inline HalvingResult halve(const Curve& curve, const Point& target) {
  HalvingResult out{halving_quartic(curve, target), {}, {}};
  out.roots = rational_roots(out.quartic.polynomial());
  for (const auto& x : out.roots) {
    const auto y = exact_sqrt(curve.rhs(x));
    if (!y || *y == 0) continue;
    for (const Rational& sy : {*y, Rational(-*y)}) {
      Point r(x, sy);
      if (detail::double_unchecked(curve, r) == target) out.preimages.push_back(std::move(r));
    }
  }
  std::sort(out.preimages.begin(), out.preimages.end());
  return out;
}

/// All rational R with 2R = target; empty iff target is not in 2E(Q).
inline std::vector<Point> halving_preimages(const Curve& curve, const Point& target) {
  return halve(curve, target).preimages;
}

/// For an integral target on E_m every half point has integral x with
/// x = m (mod 2).
inline bool half_points_integral_with_parity(const Integer& m, const std::vector<Point>& preimages) {
  return std::all_of(preimages.begin(), preimages.end(), [&](const Point& r) {
    if (r.x().get_den() != 1) return false;
    const Integer diff = r.x().get_num() - m;
    return mpz_even_p(diff.get_mpz_t()) != 0;
  });
}

enum class ClassVerdict { zero, nonzero };

inline const char* to_string(ClassVerdict v) { return v == ClassVerdict::nonzero ? "nonzero" : "zero"; }

struct CongruenceReplay {
  std::string target;  // "x=0", "x=m" or "x=-m"
  ObstructionVerdict verdict = ObstructionVerdict::hypothesis_not_met;
  std::string detail;
};

/// Replays the 2-adic argument that (0, pqr), (m, pqr) or (-m, +-pqr) is not
/// a double. Requires m = 2 (mod 32); nullopt for any other point.
inline std::optional<CongruenceReplay> congruence_replay(const FamilyParams& params, const Point& p) {
  if (!p.is_integral()) return std::nullopt;
  const Integer x = p.x().get_num();
  const Integer& m = params.m;
  const Integer d = params.pqr();
  if (abs(Integer(p.y().get_num())) != d) return std::nullopt;
  CongruenceReplay out;
  if (x == 0) {
    out.target = "x=0";
  } else if (x == m) {
    out.target = "x=m";
  } else if (x == -m) {
    out.target = "x=-m";
  } else {
    return std::nullopt;
  }
  if (!congruent_two_mod_power_of_two(m, kHypothesisTwoAdicExponent)) {
    out.detail = "needs m = 2 (mod 32)";
    return out;
  }
  const auto residue = [](const Integer& v, unsigned long mod) { return static_cast<std::int64_t>(mod_u64(v, mod)); };
  const auto wrap = [](std::int64_t v, std::int64_t mod) { return ((v % mod) + mod) % mod; };

  if (out.target == "x=0") {
    // (x^2 + m^2)^2 = 8x(pqr)^2 forces x = 2k^2, i.e. (4k^4 + m^2)^2 = 16k^2(pqr)^2.
    const std::int64_t mm = residue(m, 32);
    const std::int64_t dd = residue(d, 32);
    for (std::int64_t k = 0; k < 32; ++k) {
      const std::int64_t k2 = k * k % 32;
      const std::int64_t lhs = wrap(4 * k2 * k2 + mm * mm, 32);
      if (wrap(lhs * lhs - 16 * k2 * dd * dd, 32) == 0) {
        out.verdict = ObstructionVerdict::not_obstructed;
        out.detail = "(4k^4+m^2)^2 = 16k^2(pqr)^2 is solvable mod 32 at k = " + std::to_string(k);
        return out;
      }
    }
    out.verdict = ObstructionVerdict::obstructed;
    out.detail = "x = 2k^2 and (4k^4+m^2)^2 - 16k^2(pqr)^2 != 0 (mod 32) for every k (even and odd)";
    return out;
  }
  if (out.target == "x=m") {
    // x = m + 2s gives (2s^2 - m^2)^2 = (pqr)^2 (4s + 3m); 4s + 3m must be a square.
    const std::int64_t r = wrap(3 * residue(m, 4), 4);
    if (r == 0 || r == 1) {
      out.verdict = ObstructionVerdict::not_obstructed;
      out.detail = "4s + 3m = " + std::to_string(r) + " (mod 4) is a square residue";
      return out;
    }
    out.verdict = ObstructionVerdict::obstructed;
    out.detail = "4s + 3m = " + std::to_string(r) + " (mod 4), not a square";
    return out;
  }
  // x = m + 2s gives 4s^4 + 16ms^3 + 20m^2s^2 + 8m^3s - 4s(pqr)^2 + m^4 - (pqr)^2 m = 0.
  const std::int64_t mm = residue(m, 16);
  const std::int64_t dd = wrap(residue(d, 16) * residue(d, 16), 16);
  for (std::int64_t s = 0; s < 16; ++s) {
    const std::int64_t v = 4 * s * s * s * s + 16 * mm * s * s * s + 20 * mm * mm * s * s + 8 * mm * mm * mm * s -
                           4 * s * dd + mm * mm * mm * mm - dd * mm;
    if (wrap(v, 16) == 0) {
      out.verdict = ObstructionVerdict::not_obstructed;
      out.detail = "quartic in s vanishes mod 16 at s = " + std::to_string(s);
      return out;
    }
  }
  out.verdict = ObstructionVerdict::obstructed;
  out.detail = "4s^4+16ms^3+20m^2s^2+8m^3s-4s(pqr)^2+m^4-(pqr)^2m != 0 (mod 16) for every s";
  return out;
}

struct ClassEvidence {
  Point point;
  ClassVerdict verdict = ClassVerdict::zero;
  std::optional<HalvingResult> halving;          // absent for O
  std::optional<CongruenceReplay> congruence;    // canonical points of family curves

  bool nonzero() const { return verdict == ClassVerdict::nonzero; }
};

/// Decides whether [P] != 0 in E(Q)/2E(Q). The verdict comes from exact
/// halving; for canonical family points the congruence replay is attached
/// and must agree.
inline ClassEvidence class_is_nonzero(const Curve& curve, const Point& p, const FamilyParams* params = nullptr) {
  require_on_curve(curve, p);
  ClassEvidence ev;
  ev.point = p;
  if (p.is_infinity()) return ev;
  ev.halving = halve(curve, p);
  ev.verdict = ev.halving->preimages.empty() ? ClassVerdict::nonzero : ClassVerdict::zero;
  if (params != nullptr) {
    ev.congruence = congruence_replay(*params, p);
    if (ev.congruence && ev.congruence->verdict == ObstructionVerdict::obstructed && !ev.nonzero()) {
      throw std::logic_error("congruence route and halving route disagree for " + to_string(p));
    }
  }
  return ev;
}

/// A probe point C with the classes of C, C+A, C+B, C+A+B.
struct ProbeCandidate {
  Point point;
  std::array<ClassEvidence, 4> classes;

  bool independent() const {
    return std::all_of(classes.begin(), classes.end(), [](const ClassEvidence& e) { return e.nonzero(); });
  }
};

struct RankCertificate {
  FamilyParams params;
  HypothesisReport hypotheses;
  bool torsion_trivial = false;
  bool b_infinite_order = false;
  ClassEvidence class_a;
  ClassEvidence class_b;
  ClassEvidence class_ab;
  bool classes_distinct = false;
  int rank_lower_bound = 0;
  Integer probe_height_bound = 0;
  std::size_t probe_points_found = 0;
  std::vector<ProbeCandidate> extra_points;
  std::optional<Point> rank3_witness;
};

/// 2 when torsion is trivial and [A], [B], [A+B] are all nonzero (they are
/// then distinct, giving a subgroup of order 4); 1 when B is known to have
/// infinite order; else 0.
inline int rank_bound_from_verdicts(bool torsion_trivial, bool b_infinite_order, bool a_nonzero, bool b_nonzero,
                                    bool ab_nonzero) {
  if (torsion_trivial && a_nonzero && b_nonzero && ab_nonzero) return 2;
  return b_infinite_order ? 1 : 0;
}

inline RankCertificate rank_ge_2_certificate(const FamilyParams& params, const TorsionReport& torsion) {
  RankCertificate cert;
  cert.params = params;
  cert.hypotheses = validate_hypotheses(params);
  const Curve curve = build_family_curve(params);
  const CanonicalPoints pts = canonical_points(params);
  cert.torsion_trivial = torsion.trivial();
  cert.b_infinite_order = cert.torsion_trivial || !finite_order(curve, pts.b).has_value();
  cert.class_a = class_is_nonzero(curve, pts.a, &params);
  cert.class_b = class_is_nonzero(curve, pts.b, &params);
  cert.class_ab = class_is_nonzero(curve, pts.sum, &params);
  // [A] != [B] iff [A+B] != 0, [A] != [A+B] iff [B] != 0, [B] != [A+B] iff [A] != 0.
  cert.classes_distinct = cert.class_a.nonzero() && cert.class_b.nonzero() && cert.class_ab.nonzero();
  cert.rank_lower_bound = rank_bound_from_verdicts(cert.torsion_trivial, cert.b_infinite_order, cert.class_a.nonzero(),
                                                   cert.class_b.nonzero(), cert.class_ab.nonzero());
  return cert;
}

inline RankCertificate rank_ge_2_certificate(const FamilyParams& params, unsigned num_reduction_primes = 5) {
  const Curve curve = build_family_curve(params);
  return rank_ge_2_certificate(params, analyze_torsion(curve, num_reduction_primes, &params));
}

/// Rational points searched besides integral ones have x = n / e^2 with
/// 2 <= e <= this and |n| <= height bound.
inline constexpr unsigned kProbeMaxDenominatorRoot = 3;

/// Points with |x numerator| <= height_bound, one per x (y > 0), sorted by
/// denominator then x.
inline std::vector<Point> search_points(const Curve& curve, const Integer& height_bound) {
  std::vector<Point> out;
  if (height_bound < 1) return out;
  for (unsigned long e = 1; e <= kProbeMaxDenominatorRoot; ++e) {
    const Integer e2 = Integer(e) * e;
    const Integer e4 = e2 * e2;
    const Integer e6 = e4 * e2;
    const Integer e3 = e2 * e;
    for (Integer n = -height_bound; n <= height_bound; ++n) {
      if (e > 1 && gcd(n, Integer(e)) != 1) continue;
      const Integer v = n * n * n + curve.b() * n * e4 + curve.c() * e6;
      if (auto y = exact_sqrt(v)) out.emplace_back(make_rational(n, e2), make_rational(*y, e3));
    }
  }
  return out;
}

/// Searches for a point C with [C], [C+A], [C+B], [C+A+B] all nonzero, which
/// lifts the order-4 subgroup to order 8 and the rank bound to 3.
inline RankCertificate rank_ge_3_probe(RankCertificate cert, const Integer& height_bound) {
  cert.probe_height_bound = height_bound;
  cert.extra_points.clear();
  cert.rank3_witness.reset();
  const Curve curve = build_family_curve(cert.params);
  const CanonicalPoints pts = canonical_points(cert.params);
  const Point a_minus_b = add(curve, pts.a, negate(curve, pts.b));
  std::vector<Rational> known{pts.a.x(), pts.b.x(), pts.sum.x()};
  if (!a_minus_b.is_infinity()) known.push_back(a_minus_b.x());

  const auto found = search_points(curve, height_bound);
  cert.probe_points_found = found.size();
  for (const auto& c : found) {
    if (c.y() == 0 || std::find(known.begin(), known.end(), c.x()) != known.end()) continue;
    ProbeCandidate cand;
    cand.point = c;
    const Point ca = add(curve, c, pts.a);
    const Point cb = add(curve, c, pts.b);
    const Point cab = add(curve, ca, pts.b);
    cand.classes[0] = class_is_nonzero(curve, c);
    cand.classes[1] = class_is_nonzero(curve, ca);
    cand.classes[2] = class_is_nonzero(curve, cb);
    cand.classes[3] = class_is_nonzero(curve, cab);
    if (cand.independent() && !cert.rank3_witness && cert.rank_lower_bound >= 2) {
      cert.rank3_witness = c;
      cert.rank_lower_bound = 3;
    }
    cert.extra_points.push_back(std::move(cand));
  }
  return cert;
}

inline RankCertificate rank_ge_3_probe(const FamilyParams& params, const Integer& height_bound) {
  return rank_ge_3_probe(rank_ge_2_certificate(params), height_bound);
}

}  // namespace ecfam

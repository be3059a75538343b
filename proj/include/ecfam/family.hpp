#pragma once

// The family E_m: y^2 = x^3 - m^2 x + (pqr)^2, its hypotheses and its
// canonical points A_m = (0, pqr), B_m = (m, pqr).

#include <array>
#include <optional>
#include <string>

#include "ecfam/curve.hpp"
#include "ecfam/errors.hpp"
#include "ecfam/integer.hpp"
#include "ecfam/number_theory.hpp"

namespace ecfam {

/// Exponent k in the hypothesis m = 2 (mod 2^k); the weakest one allowed.
inline constexpr unsigned kHypothesisTwoAdicExponent = 5;

struct FamilyParams {
  Integer m;
  Integer p;
  Integer q;
  Integer r;

  Integer pqr() const { return Integer(p * q * r); }

  /// Largest k >= 1 with m = 2 (mod 2^k) when m = 2 (mod 4), else 0.
  /// nullopt when m = 2, where every k qualifies.
  std::optional<unsigned long> k_witness() const {
    if (mod_u64(m, 4) != 2) return 0UL;
    const Integer diff = m - 2;
    if (diff == 0) return std::nullopt;
    return two_adic_valuation(diff);
  }

  friend bool operator==(const FamilyParams& l, const FamilyParams& r) {
    return l.m == r.m && l.p == r.p && l.q == r.q && l.r == r.r;
  }

  std::string to_string() const {
    return "m=" + m.get_str() + " p=" + p.get_str() + " q=" + q.get_str() + " r=" + r.get_str();
  }
};

struct HypothesisReport {
  bool mod3_ok = false;     // m != 0 (mod 3)
  bool mod2k_ok = false;    // m = 2 (mod 2^5)
  bool coprime_ok = false;  // none of p, q, r divides m
  bool primes_ok = false;   // p, q, r distinct odd primes

  bool all() const { return mod3_ok && mod2k_ok && coprime_ok && primes_ok; }

  friend bool operator==(const HypothesisReport&, const HypothesisReport&) = default;
};

/// m = 2 (mod 2^k).
inline bool congruent_two_mod_power_of_two(const Integer& m, unsigned k) {
  Integer modulus = pow(Integer(2), k);
  Integer diff = m - 2;
  return mpz_divisible_p(diff.get_mpz_t(), modulus.get_mpz_t()) != 0;
}

/// Every flag computed independently; never throws.
inline HypothesisReport hypothesis_flags(const FamilyParams& params) {
  HypothesisReport rep;
  rep.mod3_ok = mod_u64(params.m, 3) != 0;
  rep.mod2k_ok = congruent_two_mod_power_of_two(params.m, kHypothesisTwoAdicExponent);
  const std::array<const Integer*, 3> primes{&params.p, &params.q, &params.r};
  rep.coprime_ok = true;
  rep.primes_ok = params.p != params.q && params.p != params.r && params.q != params.r;
  for (const Integer* pr : primes) {
    if (*pr != 0 && mpz_divisible_p(params.m.get_mpz_t(), pr->get_mpz_t())) rep.coprime_ok = false;
    if (*pr == 2 || !is_prime(*pr)) rep.primes_ok = false;
  }
  return rep;
}

/// Throws InvalidParameter (m <= 0), PrimeIsTwo, NotPrime or
/// PrimesNotDistinct; otherwise reports the remaining flags.
inline HypothesisReport validate_hypotheses(const FamilyParams& params) {
  if (params.m <= 0) throw InvalidParameter("m must be a positive integer, got " + params.m.get_str());
  for (const Integer* pr : {&params.p, &params.q, &params.r}) {
    if (*pr == 2) throw PrimeIsTwo();
  }
  for (const Integer* pr : {&params.p, &params.q, &params.r}) {
    if (!is_prime(*pr)) throw NotPrime(pr->get_str());
  }
  if (params.p == params.q || params.p == params.r || params.q == params.r) throw PrimesNotDistinct();
  return hypothesis_flags(params);
}

/// make_curve(-m^2, (pqr)^2) after validating p, q, r.
inline Curve build_family_curve(const FamilyParams& params) {
  validate_hypotheses(params);
  const Integer d = params.pqr();
  return make_curve(Integer(-params.m * params.m), Integer(d * d));
}

/// 16(4m^6 - 27(pqr)^4).
inline Integer family_discriminant(const FamilyParams& params) {
  const Integer m2 = params.m * params.m;
  const Integer d2 = params.pqr() * params.pqr();
  return Integer(16 * (4 * m2 * m2 * m2 - 27 * d2 * d2));
}

struct CanonicalPoints {
  Point a;    // (0, pqr)
  Point b;    // (m, pqr)
  Point sum;  // a + b under the group law
};

inline CanonicalPoints canonical_points(const FamilyParams& params) {
  const Curve curve = build_family_curve(params);
  const Integer d = params.pqr();
  Point a(Integer(0), d);
  Point b(params.m, d);
  Point sum = add(curve, a, b);
  return {std::move(a), std::move(b), std::move(sum)};
}

}  // namespace ecfam

#pragma once

// Reduction of integral short Weierstrass curves modulo a prime and exact
// point counting over the prime field.

#include <cstdint>
#include <string>
#include <vector>

#include "ecfam/curve.hpp"
#include "ecfam/errors.hpp"
#include "ecfam/integer.hpp"
#include "ecfam/number_theory.hpp"

namespace ecfam {

enum class ReductionType { good, bad };

inline const char* to_string(ReductionType t) { return t == ReductionType::good ? "good" : "bad"; }

struct ReducedCurve {
  std::uint64_t modulus = 0;
  std::uint64_t b_mod = 0;
  std::uint64_t c_mod = 0;
  ReductionType reduction_type = ReductionType::bad;
};

/// Largest modulus accepted for point counting (the table is O(ell) bytes).
inline constexpr std::uint64_t kMaxCountingModulus = std::uint64_t{1} << 26;

/// Reduces y^2 = x^3 + bx + c modulo ell; the model may be singular over Q.
/// Throws NotPrime for a composite modulus.
inline ReducedCurve reduce_coefficients(const Integer& b, const Integer& c, std::uint64_t ell) {
  if (!is_prime(from_u64(ell))) throw NotPrime(std::to_string(ell));
  ReducedCurve rc;
  rc.modulus = ell;
  rc.b_mod = mod_u64(b, ell);
  rc.c_mod = mod_u64(c, ell);
  const Integer disc = -16 * (4 * b * b * b + 27 * c * c);
  rc.reduction_type = mod_u64(disc, ell) == 0 ? ReductionType::bad : ReductionType::good;
  return rc;
}

/// Good iff ell does not divide the discriminant.
inline ReducedCurve reduce_curve(const Curve& curve, std::uint64_t ell) {
  return reduce_coefficients(curve.b(), curve.c(), ell);
}

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return acc;
}

// Number of y in F_ell with y^2 = v, indexed by v.
inline std::vector<std::uint8_t> square_root_counts(std::uint64_t ell) {
  std::vector<std::uint8_t> roots(ell, 0);
  for (std::uint64_t y = 0; y < ell; ++y) ++roots[mul_mod(y, y, ell)];
  return roots;
}

}  // namespace detail

/// Quadratic character of a modulo an odd prime, by Euler's criterion.
inline int legendre_symbol(std::uint64_t a, std::uint64_t ell) {
  a %= ell;
  if (a == 0) return 0;
  return detail::pow_mod(a, (ell - 1) / 2, ell) == 1 ? 1 : -1;
}

/// |N - (ell + 1)| <= 2 sqrt(ell), checked exactly as (N - ell - 1)^2 <= 4 ell.
inline bool within_hasse_bound(std::uint64_t count, std::uint64_t ell) {
  const __int128 t = static_cast<__int128>(count) - static_cast<__int128>(ell) - 1;
  return t * t <= static_cast<__int128>(4) * ell;
}

/// 1 + #{(x, y) in F_ell^2 : y^2 = x^3 + bx + c}, regardless of reduction
/// type. Uses a square-root count table, which is also correct at ell = 2.
inline std::uint64_t count_points_unchecked(const ReducedCurve& rc) {
  const std::uint64_t ell = rc.modulus;
  if (ell == 0 || ell > kMaxCountingModulus) throw InvalidParameter("modulus out of range for point counting");
  const auto roots = detail::square_root_counts(ell);
  std::uint64_t total = 1;
  for (std::uint64_t x = 0; x < ell; ++x) {
    const std::uint64_t x2 = detail::mul_mod(x, x, ell);
    const std::uint64_t v = (detail::mul_mod((x2 + rc.b_mod) % ell, x, ell) + rc.c_mod) % ell;
    total += roots[v];
  }
  return total;
}

class HasseViolation : public std::logic_error {
 public:
  HasseViolation(std::uint64_t count, std::uint64_t ell)
      : std::logic_error("Hasse bound violated: #E(F_" + std::to_string(ell) + ") = " + std::to_string(count)) {}
};

/// #E(F_ell) for a good reduction; throws BadReduction otherwise. Every
/// count is checked against the Hasse bound.
inline std::uint64_t count_points(const ReducedCurve& rc) {
  if (rc.reduction_type != ReductionType::good) throw BadReduction(std::to_string(rc.modulus));
  const std::uint64_t n = count_points_unchecked(rc);
  if (!within_hasse_bound(n, rc.modulus)) throw HasseViolation(n, rc.modulus);
  return n;
}

}  // namespace ecfam

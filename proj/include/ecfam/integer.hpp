#pragma once

// Exact integer and rational scalars. Both are GMP values; mpq_class is kept
// canonical (lowest terms, positive denominator) so equality is structural.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ecfam {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& n) { return n.get_str(); }

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  Integer out(std::string(digits), 10);
  if (text.front() == '-') out = -out;
  return out;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

inline bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline std::optional<Integer> exact_sqrt(const Integer& n) {
  if (!is_square(n)) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Non-negative rational square root, if the argument is a rational square.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  auto num = exact_sqrt(Integer(q.get_num()));
  if (!num) return std::nullopt;
  auto den = exact_sqrt(Integer(q.get_den()));
  if (!den) return std::nullopt;
  return make_rational(*num, *den);
}

inline Integer pow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline Integer abs(const Integer& n) { return n < 0 ? Integer(-n) : n; }

/// Floor division; the result satisfies a = q*b + r with 0 <= r < |b| when b > 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Residue in [0, modulus).
inline std::uint64_t mod_u64(const Integer& a, std::uint64_t modulus) {
  return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(modulus));
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline int sign(const Integer& n) { return sgn(n); }
inline int sign(const Rational& q) { return sgn(q); }

inline bool fits_u64(const Integer& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Integer& n) {
  if (!fits_u64(n)) throw std::out_of_range("integer does not fit in 64 bits: " + n.get_str());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

inline Integer from_u64(std::uint64_t v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

}  // namespace ecfam

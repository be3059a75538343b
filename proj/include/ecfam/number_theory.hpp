#pragma once

// Primality, factorization and divisor enumeration over arbitrary-precision
// integers.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ecfam/errors.hpp"
#include "ecfam/integer.hpp"

namespace ecfam {

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t kLimit = 1'000'000;
    std::vector<bool> composite(kLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Strong probable-prime test to base a; n odd, n > a.
inline bool strong_probable_prime(const Integer& n, unsigned long a) {
  Integer d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x;
  Integer base(a);
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Integer n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace detail

/// Miller-Rabin with the first thirteen primes as witnesses, which is a
/// complete test below this bound.
inline const Integer& deterministic_primality_bound() {
  static const Integer bound("3317044064679887385961981", 10);
  return bound;
}

/// Deterministic below deterministic_primality_bound(); above it GMP's
/// Baillie-PSW based test is used.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static constexpr std::array<unsigned long, 13> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long p : kWitnesses) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n >= deterministic_primality_bound()) return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
  return std::all_of(kWitnesses.begin(), kWitnesses.end(),
                     [&](unsigned long a) { return detail::strong_probable_prime(n, a); });
}

inline Integer next_prime(const Integer& n) {
  Integer candidate = n < 2 ? Integer(2) : Integer(n + 1);
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
};

using Factorization = std::vector<PrimePower>;

/// Pollard-Brent iteration cap per factor split.
inline constexpr std::uint64_t kDefaultRhoBudget = std::uint64_t{1} << 24;

namespace detail {

inline std::optional<Integer> pollard_brent(const Integer& n, unsigned long c, std::uint64_t budget) {
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  const auto step = [&](const Integer& v) -> Integer { return Integer((v * v + c) % n); };
  Integer y = 2, x, ys, q = 1, g = 1;
  std::uint64_t r = 1, used = 0;
  constexpr std::uint64_t kBatch = 128;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(kBatch, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = step(y);
        q = q * abs(Integer(x - y)) % n;
      }
      g = gcd(q, n);
      k += lim;
      used += lim;
    }
    r *= 2;
    if (used > budget) return std::nullopt;
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = gcd(abs(Integer(x - ys)), n);
    } while (g == 1);
  }
  if (g == n) return std::nullopt;
  return g;
}

inline bool split_into(const Integer& n, std::vector<Integer>& primes, std::uint64_t budget) {
  if (n == 1) return true;
  if (is_prime(n)) {
    primes.push_back(n);
    return true;
  }
  Integer root;
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2;; ++k) {
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) break;
    }
    // n = root^k; splitting as root * (n / root) keeps the recursion simple.
    return split_into(root, primes, budget) && split_into(Integer(n / root), primes, budget);
  }
  for (unsigned long c = 1; c <= 16; ++c) {
    if (auto d = pollard_brent(n, c, budget)) {
      return split_into(*d, primes, budget) && split_into(Integer(n / *d), primes, budget);
    }
  }
  return false;
}

}  // namespace detail

/// Factors |n| (n != 0) by trial division up to 10^6 then Pollard-Brent.
/// Returns nullopt when the rho budget runs out.
inline std::optional<Factorization> factor(const Integer& n, std::uint64_t rho_budget = kDefaultRhoBudget) {
  if (n == 0) throw std::invalid_argument("cannot factor zero");
  Integer rest = abs(n);
  Factorization out;
  for (std::uint32_t p : detail::small_primes()) {
    if (Integer(p) * p > rest) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    PrimePower pp{Integer(p), 0};
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++pp.exponent;
    }
    out.push_back(std::move(pp));
  }
  if (rest == 1) return out;
  std::vector<Integer> large;
  if (!detail::split_into(rest, large, rho_budget)) return std::nullopt;
  std::sort(large.begin(), large.end());
  for (const auto& p : large) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

inline Factorization factor_or_throw(const Integer& n) {
  auto f = factor(n);
  if (!f) throw FactorizationBudgetExceeded(n.get_str());
  return *f;
}

/// Positive divisors in increasing order.
inline std::vector<Integer> divisors(const Factorization& f) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : f) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Positive d with d^2 | n, in increasing order.
inline std::vector<Integer> square_divisor_roots(const Factorization& f) {
  Factorization halved;
  for (const auto& [p, e] : f) {
    if (e >= 2) halved.push_back({p, e / 2});
  }
  return divisors(halved);
}

/// 2-adic valuation of a nonzero integer.
inline unsigned long two_adic_valuation(const Integer& n) { return mpz_scan1(n.get_mpz_t(), 0); }

}  // namespace ecfam

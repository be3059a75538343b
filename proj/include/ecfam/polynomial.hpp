#pragma once

// Dense univariate polynomials over Z, with exact integer/rational root
// finding.
//
// integer_roots() isolates every real root to a unit interval by recursing on
// the derivative (between consecutive critical brackets the polynomial is
// monotone, so one integer bisection per segment suffices), then tests the
// bracket endpoints exactly. It never factors anything, so it is complete for
// coefficients of any size. rational_roots() reduces to it through the monic
// substitution t = a_n x. rational_roots_by_divisors() is the textbook
// rational-root-theorem enumeration and is kept as an independent route.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ecfam/integer.hpp"
#include "ecfam/number_theory.hpp"

namespace ecfam {

class Polynomial {
 public:
  Polynomial() = default;

  /// Coefficients from the constant term upwards.
  explicit Polynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial constant(Integer c) { return Polynomial(std::vector<Integer>{std::move(c)}); }
  static Polynomial x() { return Polynomial(std::vector<Integer>{0, 1}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  const Integer& leading() const { return coeffs_.back(); }

  Integer operator()(const Integer& v) const {
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
    return acc;
  }

  Rational operator()(const Rational& v) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
    return acc;
  }

  int sign_at(const Integer& v) const { return sgn((*this)(v)); }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Integer> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(d));
  }

  Integer content() const {
    Integer g = 0;
    for (const auto& c : coeffs_) g = gcd(g, c);
    return g;
  }

  /// Divides out the content and makes the leading coefficient positive.
  Polynomial primitive_part() const {
    if (is_zero()) return {};
    Integer g = content();
    if (leading() < 0) g = -g;
    std::vector<Integer> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Integer& k, const Polynomial& p) {
    std::vector<Integer> out(p.coeffs_);
    for (auto& c : out) c *= k;
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(char var = 'x') const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const Integer& c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      Integer mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (mag != 1 || i == 0) os << mag.get_str();
      if (i >= 1) os << var;
      if (i >= 2) os << '^' << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Integer> coeffs_;
};

namespace detail {

// Sorted integers k such that every real root of f lies in some [k, k+1].
// May contain spurious entries; never misses a root.
inline std::vector<Integer> root_brackets(const Polynomial& f) {
  if (f.degree() <= 0) return {};
  if (f.degree() == 1) return {floor_div(Integer(-f.coeff(0)), f.coeff(1))};

  Integer bound = 0;
  for (const auto& c : f.coefficients()) bound = std::max(bound, abs(c));
  bound += 1;  // Cauchy: every root has |z| < 1 + max|a_i| / |a_n| <= bound.

  std::vector<Integer> crit = root_brackets(f.derivative());
  std::vector<Integer> marks{-bound, bound};
  for (const auto& k : crit) {
    if (k >= -bound && k <= bound) marks.push_back(k);
    if (k + 1 >= -bound && k + 1 <= bound) marks.push_back(k + 1);
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  std::vector<Integer> out;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    Integer lo = marks[i];
    Integer hi = marks[i + 1];
    if (hi == lo + 1 && std::binary_search(crit.begin(), crit.end(), lo)) {
      out.push_back(lo);
      continue;
    }
    // f is monotone on [lo, hi].
    const int s_lo = f.sign_at(lo);
    const int s_hi = f.sign_at(hi);
    if (s_lo == 0) out.push_back(lo);
    if (s_hi == 0) out.push_back(hi);
    if (s_lo * s_hi >= 0) continue;
    while (hi - lo > 1) {
      Integer mid = floor_div(Integer(lo + hi), Integer(2));
      const int s_mid = f.sign_at(mid);
      if (s_mid == 0) {
        lo = mid;
        break;
      }
      (s_mid == s_lo ? lo : hi) = mid;
    }
    out.push_back(lo);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// All integer roots of a nonzero polynomial, sorted and distinct.
inline std::vector<Integer> integer_roots(const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("integer_roots of the zero polynomial");
  std::vector<Integer> out;
  for (const auto& k : detail::root_brackets(f)) {
    if (f.sign_at(k) == 0) out.push_back(k);
    Integer k1 = k + 1;
    if (f.sign_at(k1) == 0) out.push_back(k1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// All rational roots of a nonzero polynomial, sorted and distinct.
inline std::vector<Rational> rational_roots(const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
  std::vector<Rational> out;
  std::size_t shift = 0;
  while (f.coeff(shift) == 0) ++shift;
  if (shift > 0) out.emplace_back(0);
  std::vector<Integer> rest(f.coefficients().begin() + static_cast<std::ptrdiff_t>(shift), f.coefficients().end());
  const Polynomial g = Polynomial(std::move(rest)).primitive_part();
  const int n = g.degree();
  if (n >= 1) {
    // a_n^(n-1) g(t / a_n) is monic in t; its integer roots are a_n times the
    // rational roots of g.
    const Integer& lead = g.leading();
    std::vector<Integer> monic(static_cast<std::size_t>(n) + 1);
    Integer scale = 1;
    for (int i = n; i >= 0; --i) {
      monic[static_cast<std::size_t>(i)] = g.coeff(static_cast<std::size_t>(i)) * scale;
      if (i < n) scale *= lead;
    }
    monic[static_cast<std::size_t>(n)] = 1;
    for (const auto& t : integer_roots(Polynomial(std::move(monic)))) out.push_back(make_rational(t, lead));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Rational-root theorem: candidates +-d/e with d | a_0, e | a_n, after
/// stripping factors of x. nullopt when a coefficient cannot be factored
/// within the budget.
inline std::optional<std::vector<Rational>> rational_roots_by_divisors(const Polynomial& f,
                                                                       std::uint64_t rho_budget = kDefaultRhoBudget) {
  if (f.is_zero()) throw std::invalid_argument("rational_roots_by_divisors of the zero polynomial");
  std::vector<Rational> out;
  std::size_t shift = 0;
  while (f.coeff(shift) == 0) ++shift;
  if (shift > 0) out.emplace_back(0);
  if (static_cast<int>(shift) < f.degree()) {
    auto fa = factor(f.coeff(shift), rho_budget);
    auto fl = factor(f.leading(), rho_budget);
    if (!fa || !fl) return std::nullopt;
    const auto nums = divisors(*fa);
    const auto dens = divisors(*fl);
    for (const auto& d : nums) {
      for (const auto& e : dens) {
        if (gcd(d, e) != 1) continue;
        for (int s : {1, -1}) {
          Rational cand = make_rational(Integer(s * d), e);
          if (f(cand) == 0) out.push_back(cand);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ecfam

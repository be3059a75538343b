#pragma once

// Short Weierstrass curves y^2 = x^3 + bx + c over Q with the exact
// chord-tangent group law on affine points plus the point at infinity.

#include <cstdlib>
#include <string>
#include <utility>

#include "ecfam/errors.hpp"
#include "ecfam/integer.hpp"

namespace ecfam {

class Curve {
 public:
  /// Throws SingularCurve when 4b^3 + 27c^2 = 0.
  Curve(Integer b, Integer c) : b_(std::move(b)), c_(std::move(c)) {
    if (4 * b_ * b_ * b_ + 27 * c_ * c_ == 0) throw SingularCurve();
  }

  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }

  /// Delta = -16(4b^3 + 27c^2).
  Integer discriminant() const { return Integer(-16 * (4 * b_ * b_ * b_ + 27 * c_ * c_)); }

  /// x^3 + bx + c.
  Integer rhs(const Integer& x) const { return Integer((x * x + b_) * x + c_); }
  Rational rhs(const Rational& x) const { return Rational((x * x + b_) * x + c_); }

  friend bool operator==(const Curve& l, const Curve& r) { return l.b_ == r.b_ && l.c_ == r.c_; }

  std::string to_string() const {
    return "y^2 = x^3 + (" + b_.get_str() + ")x + (" + c_.get_str() + ")";
  }

 private:
  Integer b_;
  Integer c_;
};

inline Curve make_curve(Integer b, Integer c) { return Curve(std::move(b), std::move(c)); }

inline Integer discriminant(const Curve& curve) { return curve.discriminant(); }

class Point {
 public:
  /// The point at infinity.
  Point() = default;

  Point(Rational x, Rational y) : infinite_(false), x_(std::move(x)), y_(std::move(y)) {
    x_.canonicalize();
    y_.canonicalize();
  }

  Point(const Integer& x, const Integer& y) : Point(Rational(x), Rational(y)) {}

  static Point infinity() { return {}; }

  bool is_infinity() const { return infinite_; }
  /// Undefined for the point at infinity.
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  bool is_integral() const { return !infinite_ && x_.get_den() == 1 && y_.get_den() == 1; }

  friend bool operator==(const Point& l, const Point& r) {
    if (l.infinite_ || r.infinite_) return l.infinite_ == r.infinite_;
    return l.x_ == r.x_ && l.y_ == r.y_;
  }

  /// Total order: infinity first, then by (x, y).
  friend bool operator<(const Point& l, const Point& r) {
    if (l.infinite_ || r.infinite_) return l.infinite_ && !r.infinite_;
    if (l.x_ != r.x_) return l.x_ < r.x_;
    return l.y_ < r.y_;
  }

 private:
  bool infinite_ = true;
  Rational x_;
  Rational y_;
};

inline std::string to_string(const Point& p) {
  if (p.is_infinity()) return "O";
  return "(" + p.x().get_str() + ", " + p.y().get_str() + ")";
}

inline bool is_on_curve(const Curve& curve, const Point& p) {
  return p.is_infinity() || p.y() * p.y() == curve.rhs(p.x());
}

inline void require_on_curve(const Curve& curve, const Point& p) {
  if (!is_on_curve(curve, p)) throw PointNotOnCurve(to_string(p));
}

namespace detail {

inline Point negate_unchecked(const Point& p) {
  if (p.is_infinity()) return p;
  return {p.x(), Rational(-p.y())};
}

inline Point double_unchecked(const Curve& curve, const Point& p) {
  if (p.is_infinity() || p.y() == 0) return Point::infinity();
  const Rational slope = (3 * p.x() * p.x() + curve.b()) / (2 * p.y());
  Rational x3 = slope * slope - 2 * p.x();
  Rational y3 = slope * (p.x() - x3) - p.y();
  return {std::move(x3), std::move(y3)};
}

inline Point add_unchecked(const Curve& curve, const Point& p, const Point& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.x() == q.x()) {
    if (p.y() == q.y()) return double_unchecked(curve, p);
    return Point::infinity();
  }
  const Rational slope = (q.y() - p.y()) / (q.x() - p.x());
  Rational x3 = slope * slope - p.x() - q.x();
  Rational y3 = slope * (p.x() - x3) - p.y();
  return {std::move(x3), std::move(y3)};
}

inline Point scalar_mul_unchecked(const Curve& curve, const Integer& n, const Point& p) {
  Integer k = abs(n);
  Point acc;
  Point run = p;
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = add_unchecked(curve, acc, run);
    if (i + 1 < bits) run = double_unchecked(curve, run);
  }
  return n < 0 ? negate_unchecked(acc) : acc;
}

}  // namespace detail

inline Point negate(const Curve& curve, const Point& p) {
  require_on_curve(curve, p);
  return detail::negate_unchecked(p);
}

inline Point add(const Curve& curve, const Point& p, const Point& q) {
  require_on_curve(curve, p);
  require_on_curve(curve, q);
  return detail::add_unchecked(curve, p, q);
}

/// Tangent-line doubling; returns O when y = 0.
inline Point double_point(const Curve& curve, const Point& p) {
  require_on_curve(curve, p);
  return detail::double_unchecked(curve, p);
}

/// Double-and-add on |n|, negated for n < 0.
inline Point scalar_mul(const Curve& curve, const Integer& n, const Point& p) {
  require_on_curve(curve, p);
  return detail::scalar_mul_unchecked(curve, n, p);
}

// Closed forms for y^2 = x^3 - m^2 x + D^2.

/// x' = ((x^2 + m^2)^2 - 8xD^2) / 4y^2,  y' = -y - (3x^2 - m^2)(x' - x) / 2y.
inline Point family_double_closed_form(const Integer& m, const Integer& d, const Point& p) {
  if (p.is_infinity() || p.y() == 0) return Point::infinity();
  const Rational& x = p.x();
  const Rational& y = p.y();
  const Rational m2(m * m);
  const Rational d2(d * d);
  const Rational x2 = x * x + m2;
  Rational xd = (x2 * x2 - 8 * x * d2) / (4 * y * y);
  Rational yd = -y - (3 * x * x - m2) / (2 * y) * (xd - x);
  return {std::move(xd), std::move(yd)};
}

/// 4P as the closed-form doubling applied to 2P.
inline Point family_quadruple_closed_form(const Integer& m, const Integer& d, const Point& p) {
  return family_double_closed_form(m, d, family_double_closed_form(m, d, p));
}

}  // namespace ecfam

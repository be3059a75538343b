#pragma once

#include <stdexcept>
#include <string>

namespace ecfam {

/// Base class for every error the toolkit raises on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularCurve : public Error {
 public:
  SingularCurve() : Error("curve is singular: 4b^3 + 27c^2 = 0") {}
};

class PointNotOnCurve : public Error {
 public:
  explicit PointNotOnCurve(const std::string& pt) : Error("point is not on the curve: " + pt) {}
};

class NotPrime : public Error {
 public:
  explicit NotPrime(const std::string& n) : Error(n + " is not prime") {}
};

class PrimesNotDistinct : public Error {
 public:
  PrimesNotDistinct() : Error("p, q, r must be pairwise distinct") {}
};

class PrimeIsTwo : public Error {
 public:
  PrimeIsTwo() : Error("p, q, r must be odd primes") {}
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class BadReduction : public Error {
 public:
  explicit BadReduction(const std::string& ell)
      : Error("curve has bad reduction at " + ell) {}
};

class UnsupportedOrder : public Error {
 public:
  explicit UnsupportedOrder(unsigned n)
      : Error("unsupported torsion order " + std::to_string(n) + " (expected 2, 3, 5 or 7)") {}
};

class InfinityTarget : public Error {
 public:
  InfinityTarget() : Error("cannot halve the point at infinity") {}
};

class FactorizationBudgetExceeded : public Error {
 public:
  explicit FactorizationBudgetExceeded(const std::string& n)
      : Error("factorization budget exhausted for " + n) {}
};

}  // namespace ecfam

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flowpoly/rational.hpp"

namespace flowpoly {

// Dense univariate polynomial, coefficients in ascending degree. The zero
// polynomial has no coefficients and degree -1.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);

  static RationalPoly constant(const Rational& c);
  static RationalPoly monomial(const Rational& c, int degree);
  // a + b t
  static RationalPoly affine(const Rational& a, const Rational& b);
  static RationalPoly variable() { return affine(0, 1); }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  Rational coefficient(int k) const;

  Rational evaluate(const Rational& t) const;
  // p(inner(t)).
  RationalPoly compose(const RationalPoly& inner) const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& c);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
  friend RationalPoly operator-(RationalPoly a) { return a *= Rational(-1); }
  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

  // Human-readable, highest degree first, e.g. "t^3 - 4*t^2 + 6*t - 3".
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

// Sparse bivariate polynomial: (i, j) -> coefficient of x^i y^j.
class RationalBiPoly {
 public:
  using Terms = std::map<std::pair<int, int>, Rational>;

  RationalBiPoly() = default;
  static RationalBiPoly constant(const Rational& c);
  static RationalBiPoly x();
  static RationalBiPoly y();

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(int i, int j) const;
  void add_term(int i, int j, const Rational& c);

  Rational evaluate(const Rational& x, const Rational& y) const;
  // T(px(t), py(t)) as a univariate polynomial.
  RationalPoly substitute(const RationalPoly& px, const RationalPoly& py) const;

  RationalBiPoly& operator+=(const RationalBiPoly& o);
  RationalBiPoly& operator*=(const RationalBiPoly& o);
  friend RationalBiPoly operator+(RationalBiPoly a, const RationalBiPoly& b) { return a += b; }
  friend RationalBiPoly operator*(RationalBiPoly a, const RationalBiPoly& b) { return a *= b; }
  friend bool operator==(const RationalBiPoly&, const RationalBiPoly&) = default;

  std::string to_string() const;

 private:
  Terms terms_;
};

struct Sample {
  std::int64_t x = 0;
  BigInt y = 0;
};

// The unique interpolant of degree <= degree through exactly degree + 1
// points. Throws DomainError on a wrong point count or repeated abscissas.
RationalPoly lagrange_interpolate(std::span<const Sample> points, int degree);

// (-1)^n p(-t).
RationalPoly reciprocity_transform(const RationalPoly& p, int n);

// C(n, k) through the falling factorial, so negative n is allowed.
// Zero for k < 0, and for k > n >= 0.
BigInt binomial(std::int64_t n, std::int64_t k);
// Multisets of size r from n kinds: C(n + r - 1, r).
BigInt multichoose(std::int64_t n, std::int64_t r);
// top (top - 1) ... (top - k + 1) / k! as a polynomial.
RationalPoly binomial_poly(const RationalPoly& top, int k);

}  // namespace flowpoly

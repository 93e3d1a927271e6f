#include <gtest/gtest.h>

#include <random>

#include "flowpoly/errors.hpp"
#include "flowpoly/polynomial.hpp"
#include "flowpoly/rational.hpp"

namespace flowpoly {
namespace {

RationalPoly poly(std::initializer_list<std::int64_t> ascending) {
  std::vector<Rational> c;
  for (std::int64_t v : ascending) c.emplace_back(v);
  return RationalPoly(c);
}

TEST(Rational, CanonicalForm) {
  const Rational r(BigInt(6), BigInt(-4));
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational(0).to_string(), "0/1");
  EXPECT_EQ(Rational(7).to_short_string(), "7");
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), DomainError);
  EXPECT_THROW(Rational(1) / Rational(0), DomainError);
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("86/3"), Rational(BigInt(86), BigInt(3)));
  EXPECT_EQ(Rational::parse("-14"), Rational(-14));
  EXPECT_EQ(Rational::parse("4/2"), Rational(2));
  EXPECT_THROW(Rational::parse("1/0"), DomainError);
  EXPECT_THROW(Rational::parse("x"), DomainError);
  EXPECT_THROW(Rational::parse(""), DomainError);
}

TEST(RationalPoly, Arithmetic) {
  EXPECT_EQ(poly({-1, 1}) * poly({-1, 1}), poly({1, -2, 1}));
  EXPECT_EQ(poly({-3, 6, -4, 1}).evaluate(2), Rational(1));
  EXPECT_EQ(poly({-1, 1}).compose(poly({1, -1})), poly({0, -1}));
  EXPECT_TRUE((poly({1, 2}) - poly({1, 2})).is_zero());
  EXPECT_EQ(RationalPoly().degree(), -1);
  EXPECT_EQ(poly({0, 0, 0}).degree(), -1);
  EXPECT_EQ(poly({-3, 6, -4, 1}).to_string(), "t^3 - 4*t^2 + 6*t - 3");
}

TEST(RationalPoly, Interpolation) {
  EXPECT_EQ(lagrange_interpolate(std::vector<Sample>{{1, 0}, {2, 1}}, 1), poly({-1, 1}));
  EXPECT_EQ(lagrange_interpolate(std::vector<Sample>{{0, 1}, {1, 2}, {2, 5}}, 2), poly({1, 0, 1}));
  EXPECT_EQ(lagrange_interpolate(std::vector<Sample>{{1, 0}, {2, 1}, {3, 6}, {4, 21}}, 3),
            poly({-3, 6, -4, 1}));
  EXPECT_THROW(lagrange_interpolate(std::vector<Sample>{{1, 0}, {1, 1}}, 1), DomainError);
  EXPECT_THROW(lagrange_interpolate(std::vector<Sample>{{1, 0}}, 1), DomainError);
}

TEST(RationalPoly, Reciprocity) {
  EXPECT_EQ(reciprocity_transform(poly({-1, 1}), 1), poly({1, 1}));
  const RationalPoly p = poly({5, -2, 0, 7});
  EXPECT_EQ(reciprocity_transform(reciprocity_transform(p, 3), 3), p);
  // (16/3)t^3 - 20t^2 + (86/3)t - 14
  const RationalPoly phi_z({Rational(-14), Rational(BigInt(86), BigInt(3)), Rational(-20),
                            Rational(BigInt(16), BigInt(3))});
  EXPECT_EQ(reciprocity_transform(phi_z, 3).evaluate(0), Rational(14));
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(7, 3), 35);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(3, -1), 0);
  EXPECT_EQ(binomial(-1, 3), -1);
  for (int r = 0; r < 6; ++r) EXPECT_EQ(multichoose(2, r), r + 1);
  const RationalPoly c = binomial_poly(RationalPoly::variable(), 2);
  for (int n = 0; n < 8; ++n) EXPECT_EQ(c.evaluate(n), Rational(binomial(n, 2)));
}

TEST(RationalBiPoly, Basics) {
  const RationalBiPoly t = RationalBiPoly::x() * RationalBiPoly::x() + RationalBiPoly::x() +
                           RationalBiPoly::y();
  EXPECT_EQ(t.coefficient(2, 0), Rational(1));
  EXPECT_EQ(t.coefficient(0, 1), Rational(1));
  EXPECT_EQ(t.evaluate(0, 2), Rational(2));
  EXPECT_EQ(t.to_string(), "x^2 + x + y");
  RationalBiPoly z = RationalBiPoly::x();
  z.add_term(1, 0, -1);
  EXPECT_TRUE(z.is_zero());
}

TEST(PolyalgProperty, RingLaws) {
  std::mt19937_64 rng(99);
  auto random_poly = [&] {
    std::vector<Rational> c(rng() % 5);
    for (auto& v : c) {
      v = Rational(BigInt(static_cast<int>(rng() % 11) - 5), BigInt(1 + rng() % 4));
    }
    return RationalPoly(c);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const RationalPoly a = random_poly(), b = random_poly(), c = random_poly();
    const Rational x(BigInt(static_cast<int>(rng() % 9) - 4), BigInt(1 + rng() % 3));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b).evaluate(x), a.evaluate(x) * b.evaluate(x));
    EXPECT_EQ((a + b).evaluate(x), a.evaluate(x) + b.evaluate(x));
    EXPECT_EQ(a.compose(b).evaluate(x), a.evaluate(b.evaluate(x)));
    // Interpolating d+2 samples agrees with interpolating the first d+1.
    const int d = std::max(a.degree(), 0);
    std::vector<Sample> pts;
    bool integral = true;
    for (int k = 0; k <= d + 1; ++k) {
      const Rational v = a.evaluate(k);
      integral = integral && v.is_integer();
      pts.push_back({k, v.numerator()});
    }
    if (integral) {
      const RationalPoly lo = lagrange_interpolate(std::span(pts).first(d + 1), d);
      const RationalPoly hi = lagrange_interpolate(pts, d + 1);
      EXPECT_EQ(lo, hi);
      EXPECT_EQ(lo, a);
    }
  }
}

}  // namespace
}  // namespace flowpoly

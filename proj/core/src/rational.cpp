#include "flowpoly/rational.hpp"

#include "flowpoly/errors.hpp"

namespace flowpoly {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw DomainError("malformed rational '" + std::string(whole) + "'");
  }
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw DomainError("malformed rational '" + std::string(whole) + "'");
    }
    v = v * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  value_ = boost::multiprecision::cpp_rational(num) / boost::multiprecision::cpp_rational(den);
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  return Rational(parse_integer(text.substr(0, slash), text),
                  parse_integer(text.substr(slash + 1), text));
}

BigInt Rational::numerator() const {
  return boost::multiprecision::numerator(value_);
}

BigInt Rational::denominator() const {
  return boost::multiprecision::denominator(value_);
}

std::string Rational::to_string() const {
  return numerator().str() + "/" + denominator().str();
}

std::string Rational::to_short_string() const {
  return is_integer() ? numerator().str() : to_string();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

}  // namespace flowpoly

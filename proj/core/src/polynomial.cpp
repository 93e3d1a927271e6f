#include "flowpoly/polynomial.hpp"

#include <set>
#include <sstream>

#include "flowpoly/errors.hpp"

namespace flowpoly {

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

RationalPoly RationalPoly::constant(const Rational& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(const Rational& c, int degree) {
  if (degree < 0) throw DomainError("negative degree");
  std::vector<Rational> coeffs(degree + 1);
  coeffs[degree] = c;
  return RationalPoly(std::move(coeffs));
}

RationalPoly RationalPoly::affine(const Rational& a, const Rational& b) {
  return RationalPoly({a, b});
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational RationalPoly::coefficient(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[k];
}

Rational RationalPoly::evaluate(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

RationalPoly RationalPoly::compose(const RationalPoly& inner) const {
  RationalPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= inner;
    acc += constant(*it);
  }
  return acc;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& c) {
  for (auto& a : coeffs_) a *= c;
  trim();
  return *this;
}

std::string RationalPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[k];
    if (c.is_zero()) continue;
    const Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out << "-";
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Rational(1);
    if (k == 0 || !unit) {
      out << (mag.is_integer() ? mag.to_short_string() : "(" + mag.to_string() + ")");
      if (k > 0) out << "*";
    }
    if (k >= 1) out << var;
    if (k >= 2) out << "^" << k;
  }
  return out.str();
}

RationalBiPoly RationalBiPoly::constant(const Rational& c) {
  RationalBiPoly p;
  p.add_term(0, 0, c);
  return p;
}

RationalBiPoly RationalBiPoly::x() {
  RationalBiPoly p;
  p.add_term(1, 0, 1);
  return p;
}

RationalBiPoly RationalBiPoly::y() {
  RationalBiPoly p;
  p.add_term(0, 1, 1);
  return p;
}

Rational RationalBiPoly::coefficient(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

void RationalBiPoly::add_term(int i, int j, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(std::make_pair(i, j), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational RationalBiPoly::evaluate(const Rational& x, const Rational& y) const {
  return substitute(RationalPoly::constant(x), RationalPoly::constant(y)).evaluate(0);
}

RationalPoly RationalBiPoly::substitute(const RationalPoly& px,
                                        const RationalPoly& py) const {
  std::vector<RationalPoly> xpow{RationalPoly::constant(1)};
  std::vector<RationalPoly> ypow{RationalPoly::constant(1)};
  RationalPoly acc;
  for (const auto& [ij, c] : terms_) {
    while (static_cast<int>(xpow.size()) <= ij.first) xpow.push_back(xpow.back() * px);
    while (static_cast<int>(ypow.size()) <= ij.second) ypow.push_back(ypow.back() * py);
    acc += xpow[ij.first] * ypow[ij.second] * c;
  }
  return acc;
}

RationalBiPoly& RationalBiPoly::operator+=(const RationalBiPoly& o) {
  for (const auto& [ij, c] : o.terms_) add_term(ij.first, ij.second, c);
  return *this;
}

RationalBiPoly& RationalBiPoly::operator*=(const RationalBiPoly& o) {
  RationalBiPoly out;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      out.add_term(a.first + b.first, a.second + b.second, ca * cb);
    }
  }
  *this = std::move(out);
  return *this;
}

std::string RationalBiPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest total degree first.
  std::vector<std::pair<std::pair<int, int>, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const int da = a.first.first + a.first.second;
    const int db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  for (const auto& [ij, c] : sorted) {
    const Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out << "-";
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool constant_term = ij.first == 0 && ij.second == 0;
    std::string mono;
    if (ij.first > 0) mono += ij.first == 1 ? "x" : "x^" + std::to_string(ij.first);
    if (ij.second > 0) {
      if (!mono.empty()) mono += "*";
      mono += ij.second == 1 ? "y" : "y^" + std::to_string(ij.second);
    }
    if (constant_term || !(mag == Rational(1))) {
      out << mag.to_short_string();
      if (!constant_term) out << "*";
    }
    out << mono;
  }
  return out.str();
}

RationalPoly lagrange_interpolate(std::span<const Sample> points, int degree) {
  if (degree < 0) throw DomainError("interpolation degree must be nonnegative");
  if (points.size() != static_cast<std::size_t>(degree) + 1) {
    throw DomainError("degree " + std::to_string(degree) + " interpolation needs " +
                      std::to_string(degree + 1) + " points, got " +
                      std::to_string(points.size()));
  }
  std::set<std::int64_t> xs;
  for (const Sample& p : points) {
    if (!xs.insert(p.x).second) {
      throw DomainError("duplicate abscissa " + std::to_string(p.x));
    }
  }
  // Newton divided differences, then expansion of the Newton form.
  const std::size_t n = points.size();
  std::vector<Rational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = Rational(points[i].y);
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) /
              Rational(points[i].x - points[i - level].x);
    }
  }
  RationalPoly result;
  for (std::size_t i = n; i-- > 0;) {
    result *= RationalPoly::affine(-points[i].x, 1);
    result += RationalPoly::constant(dd[i]);
  }
  return result;
}

RationalPoly reciprocity_transform(const RationalPoly& p, int n) {
  std::vector<Rational> coeffs = p.coefficients();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if ((n + static_cast<int>(k)) % 2 != 0) coeffs[k] = -coeffs[k];
  }
  return RationalPoly(std::move(coeffs));
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0) return 0;
  if (n >= 0 && k > n) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    num *= BigInt(n - i);
    den *= BigInt(i + 1);
  }
  return num / den;
}

BigInt multichoose(std::int64_t n, std::int64_t r) { return binomial(n + r - 1, r); }

RationalPoly binomial_poly(const RationalPoly& top, int k) {
  if (k < 0) return RationalPoly();
  RationalPoly acc = RationalPoly::constant(1);
  BigInt factorial = 1;
  for (int i = 0; i < k; ++i) {
    acc *= top - RationalPoly::constant(i);
    factorial *= i + 1;
  }
  return acc * Rational(BigInt(1), factorial);
}

}  // namespace flowpoly

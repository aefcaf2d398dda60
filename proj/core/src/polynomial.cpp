#include "nambu/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nambu {

Rational parse_rational(const std::string& text) {
  Rational value;
  if (value.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  }
  if (value.get_den() == 0) {
    throw std::invalid_argument("zero denominator in '" + text + "'");
  }
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial Polynomial::constant(std::size_t dimension, const Rational& value) {
  Polynomial p(dimension);
  p.add_term(Exponents(dimension, 0), value);
  return p;
}

Polynomial Polynomial::variable(std::size_t dimension, std::size_t index) {
  if (index >= dimension) {
    throw std::out_of_range("variable index " + std::to_string(index) +
                            " out of range for dimension " + std::to_string(dimension));
  }
  Exponents e(dimension, 0);
  e[index] = 1;
  Polynomial p(dimension);
  p.add_term(e, Rational(1));
  return p;
}

Polynomial Polynomial::term(Exponents exponents, const Rational& coefficient) {
  Polynomial p(exponents.size());
  p.add_term(exponents, coefficient);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

std::optional<Rational> Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) return std::nullopt;
  return terms_.begin()->second;
}

std::uint32_t Polynomial::degree() const {
  // Leading term in grlex order has maximal total degree.
  return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

void Polynomial::require_same_dimension(const Polynomial& other, const char* op) const {
  if (dimension_ != other.dimension_) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(dimension_) + " vs " +
                         std::to_string(other.dimension_) + ")");
  }
}

void Polynomial::add_term(const Exponents& exponents, const Rational& coefficient) {
  if (exponents.size() != dimension_) {
    throw DimensionError("monomial length " + std::to_string(exponents.size()) +
                         " does not match dimension " + std::to_string(dimension_));
  }
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_dimension(other, "add");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_dimension(other, "sub");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_dimension(b, "mul");
  Polynomial r(a.dimension_);
  Exponents e(a.dimension_);
  Rational c;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      c = ca * cb;
      r.add_term(e, c);
    }
  }
  return r;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
  Polynomial result = constant(dimension_, Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }
bool is_zero(const Polynomial& a) { return a.is_zero(); }

Polynomial partial(const Polynomial& a, std::size_t index) {
  if (index >= a.dimension()) {
    throw std::out_of_range("partial: variable index " + std::to_string(index) +
                            " out of range for dimension " + std::to_string(a.dimension()));
  }
  Polynomial r(a.dimension());
  for (const auto& [e, c] : a.terms()) {
    if (e[index] == 0) continue;
    Exponents d = e;
    --d[index];
    r.add_term(d, c * e[index]);
  }
  return r;
}

Polynomial compose(const Polynomial& a, std::span<const Polynomial> subs) {
  if (subs.size() != a.dimension()) {
    throw DimensionError("compose: expected " + std::to_string(a.dimension()) +
                         " substitutions, got " + std::to_string(subs.size()));
  }
  if (subs.empty()) return a;
  const std::size_t target = subs.front().dimension();
  for (const auto& s : subs) {
    if (s.dimension() != target) {
      throw DimensionError("compose: substitutions have inconsistent dimensions");
    }
  }
  // powers[i][k] = subs[i]^k, filled lazily.
  std::vector<std::vector<Polynomial>> powers(subs.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, Rational(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * subs[i]);
    return cache[k];
  };

  Polynomial result(target);
  for (const auto& [e, c] : a.terms()) {
    Polynomial product = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) product = product * power(i, e[i]);
    }
    result += product;
  }
  return result;
}

Polynomial extend_dimension(const Polynomial& a, std::size_t dimension) {
  if (dimension < a.dimension()) {
    throw DimensionError("extend_dimension: cannot shrink from " +
                         std::to_string(a.dimension()) + " to " + std::to_string(dimension));
  }
  Polynomial r(dimension);
  for (const auto& [e, c] : a.terms()) {
    Exponents x = e;
    x.resize(dimension, 0);
    r.add_term(x, c);
  }
  return r;
}

Rational eval_rational(const Polynomial& a, std::span<const Rational> point) {
  if (point.size() != a.dimension()) {
    throw DimensionError("eval: point has " + std::to_string(point.size()) +
                         " coordinates, polynomial has dimension " +
                         std::to_string(a.dimension()));
  }
  Rational sum(0);
  for (const auto& [e, c] : a.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

double eval_double(const Polynomial& a, std::span<const double> point) {
  if (point.size() != a.dimension()) {
    throw DimensionError("eval: point has " + std::to_string(point.size()) +
                         " coordinates, polynomial has dimension " +
                         std::to_string(a.dimension()));
  }
  double sum = 0.0;
  for (const auto& [e, c] : a.terms()) {
    double t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

std::vector<Polynomial> gradient(const Polynomial& a) {
  std::vector<Polynomial> g;
  g.reserve(a.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) g.push_back(partial(a, i));
  return g;
}

std::vector<Polynomial> coordinates(std::size_t dimension) {
  std::vector<Polynomial> z;
  z.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) z.push_back(Polynomial::variable(dimension, i));
  return z;
}

std::string render(const Polynomial& a, std::span<const std::string> names) {
  if (names.size() != a.dimension()) {
    throw DimensionError("render: " + std::to_string(names.size()) + " names for dimension " +
                         std::to_string(a.dimension()));
  }
  if (a.is_zero()) return "0";

  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : a.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    const Rational magnitude = abs(c);
    bool wrote = false;
    const bool monic = magnitude == 1;
    if (!monic || total_degree(e) == 0) {
      out << to_string(magnitude);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << '*';
      out << names[i];
      if (e[i] > 1) out << '^' << e[i];
      wrote = true;
    }
  }
  return out.str();
}

std::vector<std::string> default_names(std::size_t dimension, const std::string& prefix) {
  std::vector<std::string> names;
  names.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

}  // namespace nambu

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nambu {

// Arbitrary-precision rational; GMP keeps it canonical (reduced, positive
// denominator, zero stored as 0/1) after every arithmetic operation.
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& value);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic order, largest first: higher total degree wins, ties
// are broken by the exponent of the lowest-index variable.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

std::uint32_t total_degree(const Exponents& e);

/// Sparse multivariate polynomial with rational coefficients in `dimension`
/// variables z_0 ... z_{N-1}. Terms are kept in canonical form: no zero
/// coefficients, every exponent vector has length N.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t dimension) : dimension_(dimension) {}

  static Polynomial constant(std::size_t dimension, const Rational& value);
  static Polynomial variable(std::size_t dimension, std::size_t index);
  static Polynomial term(Exponents exponents, const Rational& coefficient);

  std::size_t dimension() const { return dimension_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Value of a constant polynomial; nullopt if any variable occurs.
  std::optional<Rational> constant_value() const;
  std::uint32_t degree() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
  }

  Polynomial pow(std::uint32_t exponent) const;

  // Adds coefficient * z^exponents, dropping the term if it cancels.
  void add_term(const Exponents& exponents, const Rational& coefficient);

 private:
  void require_same_dimension(const Polynomial& other, const char* op) const;

  std::size_t dimension_ = 0;
  TermMap terms_;
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);
bool is_zero(const Polynomial& a);

/// Exact partial derivative with respect to variable `index` (0-based).
Polynomial partial(const Polynomial& a, std::size_t index);

/// Substitutes z_i -> subs[i] and expands. All substitutions must share one
/// dimension, which becomes the dimension of the result.
Polynomial compose(const Polynomial& a, std::span<const Polynomial> subs);

/// Re-embeds `a` into a ring with `dimension >= a.dimension()` variables; the
/// new variables are appended after the existing ones.
Polynomial extend_dimension(const Polynomial& a, std::size_t dimension);

Rational eval_rational(const Polynomial& a, std::span<const Rational> point);
double eval_double(const Polynomial& a, std::span<const double> point);

std::vector<Polynomial> gradient(const Polynomial& a);
std::vector<Polynomial> coordinates(std::size_t dimension);

/// Canonical text form: terms in graded-lex order, explicit signs, `*` for
/// products and `^` for powers, e.g. "-q^2 + 1/2*u". The zero polynomial
/// renders as "0". Re-parses to the same polynomial.
std::string render(const Polynomial& a, std::span<const std::string> names);

/// Default variable names z1 ... zN.
std::vector<std::string> default_names(std::size_t dimension, const std::string& prefix = "z");

}  // namespace nambu

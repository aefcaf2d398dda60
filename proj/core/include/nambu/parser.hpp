#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nambu/polynomial.hpp"

namespace nambu {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // Message without the "line:column:" prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

bool is_identifier(std::string_view s);

/// Phase-space variables in index order plus bound parameter values.
class VariableTable {
 public:
  VariableTable() = default;
  explicit VariableTable(std::vector<std::string> names,
                         std::map<std::string, Rational> params = {});

  const std::vector<std::string>& names() const { return names_; }
  const std::map<std::string, Rational>& params() const { return params_; }
  std::size_t dimension() const { return names_.size(); }

  void bind(const std::string& name, const Rational& value);
  // Index of a variable, or npos.
  std::size_t index_of(std::string_view name) const;
  bool has_param(std::string_view name) const;

  // Same parameter bindings over a different set of variables.
  VariableTable with_names(std::vector<std::string> names) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::string> names_;
  std::map<std::string, Rational> params_;
};

/// Parses a polynomial expression:
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := '-' factor | base ('^' integer)?
///   base   := identifier | integer | '(' expr ')'
/// Division is allowed only by a nonzero constant. `line` and `column_offset`
/// position diagnostics when the expression is embedded in a larger file.
Polynomial parse_expr(std::string_view src, const VariableTable& vars, std::size_t line = 1,
                      std::size_t column_offset = 0);

}  // namespace nambu

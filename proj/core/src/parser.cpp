#include "nambu/parser.hpp"

#include <cctype>
#include <limits>

namespace nambu {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

VariableTable::VariableTable(std::vector<std::string> names, std::map<std::string, Rational> params)
    : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("variable table: no variables");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_identifier(names_[i])) {
      throw std::invalid_argument("invalid variable name '" + names_[i] + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) {
        throw std::invalid_argument("duplicate variable '" + names_[i] + "'");
      }
    }
  }
  for (const auto& [name, value] : params) bind(name, value);
}

void VariableTable::bind(const std::string& name, const Rational& value) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid parameter name '" + name + "'");
  if (index_of(name) != npos) {
    throw std::invalid_argument("parameter '" + name + "' clashes with a variable");
  }
  if (!params_.emplace(name, value).second) {
    throw std::invalid_argument("duplicate parameter '" + name + "'");
  }
}

std::size_t VariableTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return npos;
}

bool VariableTable::has_param(std::string_view name) const {
  return params_.find(std::string(name)) != params_.end();
}

VariableTable VariableTable::with_names(std::vector<std::string> names) const {
  return VariableTable(std::move(names), params_);
}

namespace {

enum class Tok { Ident, Integer, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t column;  // 1-based within the expression
};

class Parser {
 public:
  Parser(std::string_view src, const VariableTable& vars, std::size_t line, std::size_t offset)
      : src_(src), vars_(vars), line_(line), offset_(offset) {
    advance();
  }

  Polynomial parse() {
    Polynomial p = expr();
    if (tok_.kind != Tok::End) {
      if (tok_.kind == Tok::Ident || tok_.kind == Tok::Integer || tok_.kind == Tok::LParen) {
        fail("missing operator before '" + std::string(tok_.text) +
             "' (implicit multiplication is not supported; use '*')");
      }
      fail("unexpected '" + std::string(tok_.text) + "'");
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, tok_.column); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t column) const {
    throw ParseError(msg, line_, offset_ + column);
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::End, "end of input", start + 1};
      return;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      tok_ = {Tok::Ident, src_.substr(start, pos_ - start), start + 1};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
        fail_at("decimal literals are not supported; write exact fractions such as 1/2",
                start + 1);
      }
      tok_ = {Tok::Integer, src_.substr(start, pos_ - start), start + 1};
      return;
    }
    ++pos_;
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '.': fail_at("decimal literals are not supported; write exact fractions such as 1/2", start + 1);
      default: fail_at(std::string("unexpected character '") + c + "'", start + 1);
    }
    tok_ = {kind, src_.substr(start, 1), start + 1};
  }

  Polynomial expr() {
    Polynomial p = term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const bool minus = tok_.kind == Tok::Minus;
      advance();
      Polynomial rhs = term();
      if (minus) {
        p -= rhs;
      } else {
        p += rhs;
      }
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = factor();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const bool divide = tok_.kind == Tok::Slash;
      advance();
      const std::size_t column = tok_.column;
      Polynomial rhs = factor();
      if (divide) {
        const auto value = rhs.constant_value();
        if (!value) fail_at("division by a non-constant expression", column);
        if (*value == 0) fail_at("division by zero", column);
        p *= Rational(1) / *value;
      } else {
        p = p * rhs;
      }
    }
    return p;
  }

  Polynomial factor() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return -factor();
    }
    Polynomial b = base();
    if (tok_.kind == Tok::Caret) {
      advance();
      if (tok_.kind == Tok::Minus) fail("negative exponents are not supported");
      if (tok_.kind != Tok::Integer) fail("exponent must be a non-negative integer literal");
      const mpz_class e(std::string(tok_.text));
      if (e > std::numeric_limits<std::uint32_t>::max() / 2) fail("exponent too large");
      advance();
      b = b.pow(static_cast<std::uint32_t>(e.get_ui()));
    }
    return b;
  }

  Polynomial base() {
    const auto n = vars_.dimension();
    switch (tok_.kind) {
      case Tok::Ident: {
        const std::string name(tok_.text);
        const auto idx = vars_.index_of(name);
        const auto param = vars_.params().find(name);
        if (idx == VariableTable::npos && param == vars_.params().end()) {
          fail("unknown identifier '" + name + "'");
        }
        advance();
        if (idx != VariableTable::npos) return Polynomial::variable(n, idx);
        return Polynomial::constant(n, param->second);
      }
      case Tok::Integer: {
        const Rational value(mpz_class(std::string(tok_.text)));
        advance();
        return Polynomial::constant(n, value);
      }
      case Tok::LParen: {
        advance();
        Polynomial p = expr();
        if (tok_.kind != Tok::RParen) fail("expected ')'");
        advance();
        return p;
      }
      case Tok::End:
        fail("unexpected end of expression");
      default:
        fail("unexpected '" + std::string(tok_.text) + "'");
    }
  }

  std::string_view src_;
  const VariableTable& vars_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
  Token tok_{Tok::End, "", 0};
};

}  // namespace

Polynomial parse_expr(std::string_view src, const VariableTable& vars, std::size_t line,
                      std::size_t column_offset) {
  if (vars.dimension() == 0) throw ParseError("no variables declared", line, column_offset + 1);
  return Parser(src, vars, line, column_offset).parse();
}

}  // namespace nambu

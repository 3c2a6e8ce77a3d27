#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

namespace tautjac {

class syntax_error : public error {
 public:
  syntax_error(std::size_t position, const std::string& expected, const std::string& found)
      : error("syntax error at position " + std::to_string(position) + ": expected " +
              expected + ", found " + found),
        position_(position),
        expected_(expected) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

// "p0" / "q0" are rejected: q_0 is the scalar genus, not a ring variable.
class index_zero : public error {
 public:
  explicit index_zero(std::size_t position)
      : error("index 0 at position " + std::to_string(position) +
              ": q0 stands for the scalar g and p0 does not exist; write the number "
              "instead"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Parsed expression over rational literals and the variables p_n, q_n.
struct Expr {
  enum class Kind { Number, Var, Add, Sub, Mul, Neg, Pow };
  Kind kind = Kind::Number;
  std::size_t position = 0;
  Rational value;            // Number
  Variable var;              // Var
  unsigned exponent = 0;     // Pow
  std::vector<Expr> args;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("operator or end of input");
    return e;
  }

 private:
  static constexpr unsigned kMaxExponent = 4096;

  // expr := term (('+' | '-') term)*
  Expr expr() {
    Expr lhs = term();
    while (true) {
      skip_ws();
      std::size_t at = pos_;
      if (eat('+'))
        lhs = binary(Expr::Kind::Add, std::move(lhs), term(), at);
      else if (eat_minus())
        lhs = binary(Expr::Kind::Sub, std::move(lhs), term(), at);
      else
        return lhs;
    }
  }

  // term := unary ('*' unary)*
  Expr term() {
    Expr lhs = unary();
    while (true) {
      skip_ws();
      std::size_t at = pos_;
      if (!eat('*')) return lhs;
      lhs = binary(Expr::Kind::Mul, std::move(lhs), unary(), at);
    }
  }

  // unary := ('-' | '+') unary | power
  Expr unary() {
    skip_ws();
    std::size_t at = pos_;
    if (eat_minus()) {
      Expr e{Expr::Kind::Neg, at, {}, {}, 0, {}};
      e.args.push_back(unary());
      return e;
    }
    if (eat('+')) return unary();
    return power();
  }

  // power := primary ('^' integer)?
  Expr power() {
    Expr base = primary();
    skip_ws();
    std::size_t at = pos_;
    if (!eat('^')) return base;
    skip_ws();
    std::string digits = read_digits();
    if (digits.empty()) fail("non-negative integer exponent");
    if (digits.size() > 6 || std::stoul(digits) > kMaxExponent)
      throw syntax_error(at, "exponent <= " + std::to_string(kMaxExponent), digits);
    Expr e{Expr::Kind::Pow, at, {}, {}, static_cast<unsigned>(std::stoul(digits)), {}};
    e.args.push_back(std::move(base));
    return e;
  }

  // primary := integer ('/' integer)? | ('p' | 'q') integer | '(' expr ')'
  Expr primary() {
    skip_ws();
    std::size_t at = pos_;
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      std::string num = read_digits();
      std::string den = "1";
      skip_ws();
      if (eat('/')) {
        skip_ws();
        den = read_digits();
        if (den.empty()) fail("denominator");
        if (Integer(den) == 0) throw syntax_error(at, "non-zero denominator", num + "/" + den);
      }
      return {Expr::Kind::Number, at, make_rational(Integer(num), Integer(den)), {}, 0, {}};
    }
    if (pos_ < src_.size() && (src_[pos_] == 'p' || src_[pos_] == 'q')) {
      VarKind kind = src_[pos_] == 'p' ? VarKind::P : VarKind::Q;
      ++pos_;
      std::string digits = read_digits();
      if (digits.empty()) fail("variable index");
      if (digits.size() > 6) throw syntax_error(at, "variable index < 10^6", digits);
      unsigned long index = std::stoul(digits);
      if (index == 0) throw index_zero(at);
      return {Expr::Kind::Var, at, {}, Variable(kind, static_cast<std::uint32_t>(index)), 0, {}};
    }
    if (eat('(')) {
      Expr e = expr();
      skip_ws();
      if (!eat(')')) fail("')'");
      return e;
    }
    fail("number, variable (p1, q2, ...) or '('");
  }

  static Expr binary(Expr::Kind kind, Expr lhs, Expr rhs, std::size_t at) {
    Expr e{kind, at, {}, {}, 0, {}};
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  // ASCII '-' or U+2212.
  bool eat_minus() {
    if (eat('-')) return true;
    if (src_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }
  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'"
                                           : "end of input";
    throw syntax_error(pos_, expected, found);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view src) { return detail::Parser(src).parse(); }

inline Poly evaluate(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return Poly(e.value);
    case Expr::Kind::Var: return Poly(e.var);
    case Expr::Kind::Add: return evaluate(e.args[0]) + evaluate(e.args[1]);
    case Expr::Kind::Sub: return evaluate(e.args[0]) - evaluate(e.args[1]);
    case Expr::Kind::Mul: return evaluate(e.args[0]) * evaluate(e.args[1]);
    case Expr::Kind::Neg: return -evaluate(e.args[0]);
    case Expr::Kind::Pow: return pow(evaluate(e.args[0]), e.exponent);
  }
  return {};
}

inline Poly parse_poly(std::string_view src) { return evaluate(parse_expr(src)); }

// A single monomial in canonical text form ("1", "p1^2*q3").
inline Monomial parse_monomial(std::string_view src) {
  Poly f = parse_poly(src);
  if (f.size() != 1 || f.terms().begin()->second != 1)
    throw syntax_error(0, "a monomial", std::string(src));
  return f.terms().begin()->first;
}

}  // namespace tautjac

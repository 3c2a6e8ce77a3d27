#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace tautjac {

enum class VarKind : std::uint8_t { P, Q };

// A generator p_n or q_n, n >= 1. The index 0 never occurs: q_0 is the scalar
// g and is substituted when operators are built.
struct Variable {
  VarKind kind = VarKind::P;
  std::uint32_t index = 1;

  Variable() = default;
  Variable(VarKind k, std::uint32_t i) : kind(k), index(i) {
    if (i == 0) throw std::invalid_argument("variable index must be >= 1");
  }

  // Interleaved key: p1 < q1 < p2 < q2 < ...
  std::uint32_t key() const {
    return 2 * (index - 1) + (kind == VarKind::Q ? 1 : 0);
  }
  static Variable from_key(std::uint32_t key) {
    return {key % 2 ? VarKind::Q : VarKind::P, key / 2 + 1};
  }

  int weight() const { return static_cast<int>(index); }
  int sdeg() const {
    return kind == VarKind::P ? static_cast<int>(index) - 1
                              : static_cast<int>(index);
  }

  std::string name() const {
    return (kind == VarKind::P ? "p" : "q") + std::to_string(index);
  }

  friend bool operator==(const Variable&, const Variable&) = default;
  friend std::strong_ordering operator<=>(const Variable& a,
                                          const Variable& b) {
    return a.key() <=> b.key();
  }
};

inline Variable pvar(std::uint32_t i) { return {VarKind::P, i}; }
inline Variable qvar(std::uint32_t i) { return {VarKind::Q, i}; }

// Commutative monomial in the p_i, q_i, stored as (key, exponent) pairs with
// strictly increasing keys and positive exponents.
//
// The ordering compares exponents of the highest variable first, with the
// variables ordered p1 < q1 < p2 < q2 < ... . It is the term order used for
// leading terms and normal forms.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(Variable v, std::uint32_t exponent = 1) {
    if (exponent > 0) factors_.emplace_back(v.key(), exponent);
  }

  // Factors may be given in any order; repeated keys are merged.
  static Monomial from_factors(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    Monomial m;
    for (const auto& [key, e] : factors) {
      if (e == 0) continue;
      if (!m.factors_.empty() && m.factors_.back().first == key)
        m.factors_.back().second += e;
      else
        m.factors_.emplace_back(key, e);
    }
    return m;
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  std::uint32_t exponent(Variable v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(),
                               Factor{v.key(), 0});
    return it != factors_.end() && it->first == v.key() ? it->second : 0;
  }

  int weight() const {
    int w = 0;
    for (const auto& [key, e] : factors_)
      w += Variable::from_key(key).weight() * static_cast<int>(e);
    return w;
  }
  int sdeg() const {
    int s = 0;
    for (const auto& [key, e] : factors_)
      s += Variable::from_key(key).sdeg() * static_cast<int>(e);
    return s;
  }
  int pdeg() const { return kind_degree(VarKind::P); }
  int qdeg() const { return kind_degree(VarKind::Q); }
  int degree() const {
    int d = 0;
    for (const auto& f : factors_) d += static_cast<int>(f.second);
    return d;
  }

  bool divisible_by(const Monomial& other) const {
    auto it = factors_.begin();
    for (const auto& [key, e] : other.factors_) {
      while (it != factors_.end() && it->first < key) ++it;
      if (it == factors_.end() || it->first != key || it->second < e)
        return false;
    }
    return true;
  }

  // Requires divisible_by(other).
  Monomial quotient(const Monomial& other) const {
    Monomial r;
    auto jt = other.factors_.begin();
    for (const auto& [key, e] : factors_) {
      std::uint32_t sub = 0;
      if (jt != other.factors_.end() && jt->first == key) sub = (jt++)->second;
      if (e > sub) r.factors_.emplace_back(key, e - sub);
    }
    return r;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
      if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first))
        r.factors_.push_back(*i++);
      else if (i == a.factors_.end() || j->first < i->first)
        r.factors_.push_back(*j++);
      else {
        r.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  friend std::strong_ordering operator<=>(const Monomial& a,
                                          const Monomial& b) {
    auto i = a.factors_.rbegin(), j = b.factors_.rbegin();
    for (; i != a.factors_.rend() && j != b.factors_.rend(); ++i, ++j) {
      if (i->first != j->first) return i->first <=> j->first;
      if (i->second != j->second) return i->second <=> j->second;
    }
    if (i != a.factors_.rend()) return std::strong_ordering::greater;
    if (j != b.factors_.rend()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

  // "p1^2*q3"; the empty monomial prints as "1".
  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [key, e] : factors_) {
      if (!s.empty()) s += '*';
      s += Variable::from_key(key).name();
      if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
  }

 private:
  int kind_degree(VarKind kind) const {
    int d = 0;
    for (const auto& [key, e] : factors_)
      if (Variable::from_key(key).kind == kind) d += static_cast<int>(e);
    return d;
  }

  std::vector<Factor> factors_;
};

// Sparse polynomial over Q in the p_i, q_i. Terms are kept in increasing
// monomial order with no zero coefficients.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(const Monomial& m, const Rational& c = 1) {
    if (c != 0) terms_.emplace(m, c);
  }
  explicit Poly(Variable v) : Poly(Monomial(v)) {}

  const Terms& terms() const& { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // Largest monomial weight; -1 for the zero polynomial.
  int max_weight() const {
    int w = -1;
    for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
    return w;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(Poly a, long s) { return a *= Rational(s); }
  friend Poly operator*(long s, Poly a) { return a *= Rational(s); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly&, const Poly&) = default;

  // Canonical text form: leading (largest) monomial first, e.g.
  // "q2 - 1/4*q1^2", "3/4*p1*q1^2", "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      bool negative = c < 0;
      Rational a = abs(c);
      if (first)
        s += negative ? "-" : "";
      else
        s += negative ? " - " : " + ";
      first = false;
      if (m.is_one())
        s += tautjac::to_string(a);
      else if (a == 1)
        s += m.to_string();
      else
        s += tautjac::to_string(a) + "*" + m.to_string();
    }
    return s;
  }

 private:
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << m.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << f.to_string(); }

inline Poly p(std::uint32_t i) { return Poly(pvar(i)); }
inline Poly q(std::uint32_t i) { return Poly(qvar(i)); }

inline Poly pow(Poly base, unsigned e) {
  Poly r(1);
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

// Formal partial derivative with respect to v.
inline Poly partial(Variable v, const Poly& f) {
  Poly r;
  Monomial single(v);
  for (const auto& [m, c] : f.terms()) {
    auto e = m.exponent(v);
    if (e == 0) continue;
    r.add_term(m.quotient(single), c * static_cast<unsigned long>(e));
  }
  return r;
}

// Bigraded components keyed by (weight, sdeg).
inline std::map<std::pair<int, int>, Poly> grade(const Poly& f) {
  std::map<std::pair<int, int>, Poly> out;
  for (const auto& [m, c] : f.terms())
    out[{m.weight(), m.sdeg()}].add_term(m, c);
  return out;
}

// Components keyed by weight only.
inline std::map<int, Poly> by_weight(const Poly& f) {
  std::map<int, Poly> out;
  for (const auto& [m, c] : f.terms()) out[m.weight()].add_term(m, c);
  return out;
}

namespace detail {

inline void enumerate_rec(int remaining, std::uint32_t max_key,
                          std::vector<Monomial::Factor>& stack,
                          std::vector<Monomial>& out) {
  if (remaining == 0) {
    out.push_back(Monomial::from_factors(stack));
    return;
  }
  for (std::uint32_t key = 0; key <= max_key; ++key) {
    int w = Variable::from_key(key).weight();
    if (w > remaining) break;
    stack.emplace_back(key, 1);
    enumerate_rec(remaining - w, key, stack, out);
    stack.pop_back();
  }
}

}  // namespace detail

// Every monomial of weight exactly w, largest first.
inline std::vector<Monomial> enumerate_monomials(int w) {
  if (w < 0) throw std::invalid_argument("weight must be >= 0");
  std::vector<Monomial> out;
  std::vector<Monomial::Factor> stack;
  std::uint32_t max_key = w == 0 ? 0 : 2 * static_cast<std::uint32_t>(w) - 1;
  detail::enumerate_rec(w, max_key, stack, out);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace tautjac

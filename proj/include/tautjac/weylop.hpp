#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

namespace tautjac {

// One normal-ordered term: f -> coeff * multiplier * (prod of partials)(f).
// The partial multiset is stored as a Monomial in the differentiated
// variables.
struct OpTerm {
  Rational coeff;
  Monomial multiplier;
  Monomial partials;

  int partial_weight() const { return partials.weight(); }
  int weight_shift() const { return multiplier.weight() - partials.weight(); }
};

// Finite normal-ordered differential operator with polynomial coefficients.
//
// An Operator is a truncation of a possibly infinite operator: it holds every
// term whose partials have index-sum <= window(), so its action on any
// polynomial of weight <= window() is exact. shift_bound() is an upper bound
// on weight_shift() over all terms (the exact shift for the named
// constructors); composition uses it to propagate windows.
class Operator {
 public:
  using Key = std::pair<Monomial, Monomial>;  // (partials, multiplier)
  using TermMap = std::map<Key, Rational>;

  Operator(int window, int shift_bound)
      : window_(window), shift_bound_(shift_bound) {
    if (window < 0) throw std::invalid_argument("operator window must be >= 0");
  }

  // Merges duplicates, drops zeros and terms beyond the window.
  static Operator from_map(const TermMap& terms, int window, int shift_bound) {
    Operator op(window, shift_bound);
    op.terms_.reserve(terms.size());
    for (const auto& [key, c] : terms) {
      if (c == 0 || key.first.weight() > window) continue;
      op.terms_.push_back({c, key.second, key.first});
    }
    return op;
  }

  static Operator from_terms(const std::vector<OpTerm>& terms, int window,
                             int shift_bound) {
    TermMap map;
    for (const auto& t : terms) accumulate(map, t.partials, t.multiplier, t.coeff);
    return from_map(map, window, shift_bound);
  }

  static Operator scalar(const Rational& c, int window) {
    return from_terms({{c, Monomial{}, Monomial{}}}, window, 0);
  }
  static Operator identity(int window) { return scalar(1, window); }

  // Multiplication by a polynomial.
  static Operator multiplication(const Poly& f, int window) {
    TermMap map;
    int shift = 0;
    for (const auto& [m, c] : f.terms()) {
      accumulate(map, Monomial{}, m, c);
      shift = std::max(shift, m.weight());
    }
    return from_map(map, window, shift);
  }

  // The rvalue overload keeps `for (auto& t : make_x(...).terms())` safe.
  const std::vector<OpTerm>& terms() const& { return terms_; }
  std::vector<OpTerm> terms() && { return std::move(terms_); }
  int window() const { return window_; }
  int shift_bound() const { return shift_bound_; }
  bool is_zero() const { return terms_.empty(); }

  // Copy restricted to partial index-sum <= w (w <= window()).
  Operator truncated(int w) const {
    if (w > window_)
      throw window_exceeded("cannot widen an operator window from " +
                            std::to_string(window_) + " to " + std::to_string(w));
    Operator op(w, shift_bound_);
    for (const auto& t : terms_)
      if (t.partial_weight() <= w) op.terms_.push_back(t);
    return op;
  }

  Operator& operator*=(const Rational& s) {
    if (s == 0)
      terms_.clear();
    else
      for (auto& t : terms_) t.coeff *= s;
    return *this;
  }
  friend Operator operator*(Operator a, const Rational& s) { return a *= s; }
  friend Operator operator*(const Rational& s, Operator a) { return a *= s; }
  friend Operator operator-(Operator a) { return a *= -1; }

  friend Operator operator+(const Operator& a, const Operator& b) {
    return combine(a, b, 1);
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    return combine(a, b, -1);
  }

  TermMap to_map() const {
    TermMap map;
    for (const auto& t : terms_) map.emplace(Key{t.partials, t.multiplier}, t.coeff);
    return map;
  }

  static void accumulate(TermMap& map, const Monomial& partials,
                         const Monomial& multiplier, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = map.try_emplace(Key{partials, multiplier}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) map.erase(it);
    }
  }

 private:
  static Operator combine(const Operator& a, const Operator& b, int sign) {
    int w = std::min(a.window_, b.window_);
    TermMap map;
    for (const auto& t : a.terms_) accumulate(map, t.partials, t.multiplier, t.coeff);
    for (const auto& t : b.terms_)
      accumulate(map, t.partials, t.multiplier, sign > 0 ? t.coeff : Rational(-t.coeff));
    int shift = a.is_zero() ? b.shift_bound_
                : b.is_zero() ? a.shift_bound_
                              : std::max(a.shift_bound_, b.shift_bound_);
    return from_map(map, w, shift);
  }

  std::vector<OpTerm> terms_;  // sorted by (partials, multiplier)
  int window_;
  int shift_bound_;
};

namespace detail {

// d^partials applied to a monomial: returns the integer factor and the
// quotient, or factor 0 when the result vanishes.
inline std::pair<Integer, Monomial> differentiate(const Monomial& m,
                                                  const Monomial& partials) {
  if (partials.is_one()) return {1, m};
  if (!m.divisible_by(partials)) return {0, Monomial{}};
  Integer factor = 1;
  for (const auto& [key, e] : partials.factors())
    factor *= falling_factorial(m.exponent(Variable::from_key(key)), e);
  return {factor, m.quotient(partials)};
}

}  // namespace detail

inline Poly apply(const Operator& op, const Poly& f) {
  int w = f.max_weight();
  if (w > op.window())
    throw window_exceeded("input weight " + std::to_string(w) +
                          " exceeds operator window " + std::to_string(op.window()));
  Poly r;
  for (const auto& t : op.terms()) {
    for (const auto& [m, c] : f.terms()) {
      auto [factor, rest] = detail::differentiate(m, t.partials);
      if (factor == 0) continue;
      r.add_term(t.multiplier * rest, t.coeff * c * Rational(factor));
    }
  }
  return r;
}

// Normal-ordered product a o b via the Leibniz rule
//   d^alpha (m * d^beta) = sum_{gamma <= alpha} C(alpha, gamma) d^gamma(m) d^(alpha-gamma+beta).
// The result window is min(b.window, a.window - b.shift_bound), which is the
// largest window on which apply(compose(a, b), f) == apply(a, apply(b, f)) is
// guaranteed and on which the truncated product has all of its terms.
inline Operator compose(const Operator& a, const Operator& b) {
  int window = std::min(b.window(), a.window() - b.shift_bound());
  if (window < 0)
    throw window_exceeded("composition has an empty validity window");
  int shift = a.shift_bound() + b.shift_bound();

  Operator::TermMap map;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> common;  // key, max gamma
  std::vector<std::uint32_t> gamma;

  for (const auto& tb : b.terms()) {
    int beta_w = tb.partial_weight();
    if (beta_w > window) continue;
    int mult_w = tb.multiplier.weight();
    for (const auto& ta : a.terms()) {
      int alpha_w = ta.partial_weight();
      // Output partial weight is alpha_w - |gamma| + beta_w with
      // |gamma| <= mult_w.
      if (alpha_w + beta_w - mult_w > window) continue;

      common.clear();
      for (const auto& [key, e] : ta.partials.factors()) {
        auto be = tb.multiplier.exponent(Variable::from_key(key));
        if (be > 0) common.emplace_back(key, std::min(e, be));
      }
      gamma.assign(common.size(), 0);
      Rational base = ta.coeff * tb.coeff;
      while (true) {
        std::vector<Monomial::Factor> gf;
        int gamma_w = 0;
        for (std::size_t i = 0; i < common.size(); ++i)
          if (gamma[i] > 0) {
            gf.emplace_back(common[i].first, gamma[i]);
            gamma_w += Variable::from_key(common[i].first).weight() *
                       static_cast<int>(gamma[i]);
          }
        if (alpha_w - gamma_w + beta_w <= window) {
          Monomial g = Monomial::from_factors(gf);
          Integer coef = 1;
          for (std::size_t i = 0; i < common.size(); ++i) {
            if (gamma[i] == 0) continue;
            Variable v = Variable::from_key(common[i].first);
            coef *= binomial(ta.partials.exponent(v), gamma[i]);
            coef *= falling_factorial(tb.multiplier.exponent(v), gamma[i]);
          }
          Operator::accumulate(map, ta.partials.quotient(g) * tb.partials,
                               ta.multiplier * tb.multiplier.quotient(g),
                               base * Rational(coef));
        }
        std::size_t i = 0;
        while (i < common.size() && gamma[i] == common[i].second) gamma[i++] = 0;
        if (i == common.size()) break;
        ++gamma[i];
      }
    }
  }
  return Operator::from_map(map, window, shift);
}

inline Operator commutator(const Operator& a, const Operator& b) {
  Operator ab = compose(a, b);
  Operator ba = compose(b, a);
  int w = std::min(ab.window(), ba.window());
  Operator r = ab.truncated(w) - ba.truncated(w);
  return Operator::from_map(r.to_map(), w, std::max(ab.shift_bound(), ba.shift_bound()));
}

// Agreement of all terms with partial index-sum <= w.
inline bool op_equal(const Operator& a, const Operator& b, int w) {
  if (w > a.window() || w > b.window())
    throw window_exceeded("comparison window " + std::to_string(w) +
                          " exceeds an operator window (" +
                          std::to_string(a.window()) + ", " +
                          std::to_string(b.window()) + ")");
  return a.truncated(w).to_map() == b.truncated(w).to_map();
}

// Debug text form, one term per line: "c * p1*q2 * d(p1)d(p3)".
inline std::string to_string(const Operator& op) {
  if (op.is_zero()) return "0";
  std::string s;
  for (const auto& t : op.terms()) {
    if (!s.empty()) s += '\n';
    s += tautjac::to_string(t.coeff) + " * " + t.multiplier.to_string() + " * ";
    if (t.partials.is_one()) {
      s += "1";
      continue;
    }
    for (const auto& [key, e] : t.partials.factors())
      for (std::uint32_t k = 0; k < e; ++k)
        s += "d(" + Variable::from_key(key).name() + ")";
  }
  return s;
}

}  // namespace tautjac

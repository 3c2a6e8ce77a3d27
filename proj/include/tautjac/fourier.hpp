#pragma once

#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "liegen.hpp"
#include "relideal.hpp"
#include "weylop.hpp"

namespace tautjac {

// [-1]^*: multiplies the s-degree s component by (-1)^s.
inline Poly minus_one_pullback(const Poly& f) {
  Poly out;
  for (const auto& [m, c] : f.terms()) out.add_term(m, m.sdeg() % 2 ? Rational(-c) : c);
  return out;
}

enum class Nilpotence { Zero, RaisesWeight, LowersWeight, LowersPDegree, None };

inline Nilpotence classify_nilpotence(const Operator& a) {
  if (a.is_zero()) return Nilpotence::Zero;
  bool raises = true, lowers = true, lowers_p = true;
  for (const auto& t : a.terms()) {
    int s = t.weight_shift();
    raises = raises && s > 0;
    lowers = lowers && s < 0;
    lowers_p = lowers_p && t.multiplier.pdeg() < t.partials.pdeg();
  }
  if (raises) return Nilpotence::RaisesWeight;
  if (lowers) return Nilpotence::LowersWeight;
  if (lowers_p) return Nilpotence::LowersPDegree;
  return Nilpotence::None;
}

// sum_k A^k(f) / k!. With an ideal, the input is put in normal form and every
// power is reduced, so weight-raising operators terminate once weights pass
// the genus. Without one, A must lower the weight or the p-degree.
inline Poly exp_apply(const Operator& a, const Poly& f, const RelationIdeal* ideal = nullptr) {
  Nilpotence kind = classify_nilpotence(a);
  if (kind == Nilpotence::None)
    throw not_nilpotent("operator has terms that neither all raise nor all lower the "
                        "weight, nor all lower the p-degree");
  if (kind == Nilpotence::RaisesWeight && ideal == nullptr)
    throw not_nilpotent("a weight-raising exponential needs a relation ideal");

  auto reduce = [&](const Poly& x) { return ideal ? ideal->reduce(x) : x; };
  Poly start = ideal ? ideal->normal_form(f) : f;
  Poly sum = start, term = start;
  for (long k = 1; !term.is_zero(); ++k) {
    term = reduce(apply(a, term)) * make_rational(1, k);
    sum += term;
  }
  return sum;
}

// The Fourier transform S = exp(e) exp(D) exp(e) on the genus-g quotient
// (exp(-f) = exp(D) since f = -D), with Pontryagin product
// a * b = S^{-1}(S(a) S(b)).
class FourierMap {
 public:
  explicit FourierMap(std::shared_ptr<const RelationIdeal> ideal)
      : ideal_(std::move(ideal)),
        ctx_(ideal_->genus(), ideal_->genus()),
        e_(make_sl2(ctx_).e),
        d_(make_d(ctx_)) {}

  const RelationIdeal& ideal() const { return *ideal_; }
  int genus() const { return ideal_->genus(); }
  const Operator& e() const { return e_; }
  const Operator& d() const { return d_; }

  Poly transform(const Poly& f) const {
    const RelationIdeal* I = ideal_.get();
    return exp_apply(e_, exp_apply(d_, exp_apply(e_, f, I), I), I);
  }

  // S^{-1} = (-1)^g [-1]^* S, from S^2 = (-1)^g [-1]^*.
  Poly inverse(const Poly& f) const {
    Poly r = minus_one_pullback(transform(f));
    return genus() % 2 ? -r : r;
  }

  Poly pontryagin(const Poly& a, const Poly& b) const {
    return inverse(ideal_->reduce(transform(a) * transform(b)));
  }

  Poly pontryagin_unit() const { return inverse(Poly(1)); }

 private:
  std::shared_ptr<const RelationIdeal> ideal_;
  LieContext ctx_;
  Operator e_;
  Operator d_;
};

// S^2 = (-1)^g [-1]^* and the bidegree map (w, s) -> (g - w + s, s) on every
// quotient basis monomial.
inline std::vector<BracketReport> verify_s2(const FourierMap& F) {
  const RelationIdeal& I = F.ideal();
  const int g = F.genus();
  BracketReport s2{"S^2=(-1)^g[-1]^*", {}, g, I.source_cap(), true, std::nullopt};
  BracketReport deg{"S degree (w,s)->(g-w+s,s)", {}, g, I.source_cap(), true, std::nullopt};
  for (int w = 0; w <= g; ++w) {
    for (const Monomial& b : I.quotient_basis(w)) {
      Poly sb = F.transform(Poly(b));
      for (const auto& [m, c] : sb.terms())
        if (deg.ok && (m.weight() != g - w + b.sdeg() || m.sdeg() != b.sdeg())) {
          deg.ok = false;
          deg.counterexample = "S(" + b.to_string() + ") = " + sb.to_string();
        }
      Poly lhs = F.transform(sb);
      Poly rhs = minus_one_pullback(Poly(b));
      if (g % 2) rhs = -rhs;
      if (s2.ok && lhs != rhs) {
        s2.ok = false;
        s2.counterexample = "ideal incomplete at tested weights - raise source_cap: S^2(" +
                            b.to_string() + ") = " + lhs.to_string() + ", expected " +
                            rhs.to_string();
      }
    }
  }
  return {s2, deg};
}

// S X_{m,n} S^{-1} = (-1)^n X_{n,m} and S Y_{m,n} S^{-1} = (-1)^n Y_{n,m}, tested
// on every quotient basis monomial of weight <= g.
inline std::vector<BracketReport> verify_fourier_conjugation(int m, int n, const FourierMap& F) {
  const RelationIdeal& I = F.ideal();
  const int g = F.genus();
  LieContext ctx(g, g);
  Rational sign = n % 2 ? -1 : 1;

  auto check = [&](const std::string& name, const Operator& a, const Operator& b) {
    BracketReport rep{name, {m, n}, g, I.source_cap(), true, std::nullopt};
    for (int w = 0; w <= g && rep.ok; ++w)
      for (const Monomial& basis : I.quotient_basis(w)) {
        Poly lhs = F.transform(I.reduce(apply(a, F.inverse(Poly(basis)))));
        Poly rhs = I.reduce(apply(b, Poly(basis))) * sign;
        if (lhs != rhs) {
          rep.ok = false;
          rep.counterexample = "b = " + basis.to_string() + ": " + lhs.to_string() +
                               " vs " + rhs.to_string();
          break;
        }
      }
    return rep;
  };
  return {check("SXS^-1=(-1)^n X", make_x(m, n, ctx), make_x(n, m, ctx)),
          check("SYS^-1=(-1)^n Y", make_y(m, n, ctx), make_y(n, m, ctx))};
}

inline void throw_if_failed(const std::vector<BracketReport>& reports) {
  for (const auto& r : reports)
    if (!r.ok) throw verification_failure(r.identity + " failed", r.counterexample.value_or(""));
}

}  // namespace tautjac

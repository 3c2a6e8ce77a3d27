#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "weylop.hpp"

namespace tautjac {

// Genus and truncation window shared by all operator constructors. q_0 is
// replaced by the scalar genus everywhere.
struct LieContext {
  int genus;
  int window;

  LieContext(int g, int w) : genus(g), window(w) {
    if (g < 2) throw invalid_genus("genus must be >= 2, got " + std::to_string(g));
    if (w < 1) throw std::invalid_argument("window must be >= 1");
  }

  LieContext widened(int extra) const { return {genus, window + extra}; }
};

namespace detail {

// Non-decreasing sequences of `count` positive integers with sum <= max_sum.
inline void for_each_multiset(int count, int max_sum,
                              const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> seq;
  std::function<void(int, int)> rec = [&](int lo, int budget) {
    if (static_cast<int>(seq.size()) == count) {
      fn(seq);
      return;
    }
    int left = count - static_cast<int>(seq.size());
    for (int i = lo; i * left <= budget; ++i) {
      seq.push_back(i);
      rec(i, budget - i);
      seq.pop_back();
    }
  };
  rec(1, max_sum);
}

// Number of distinct orderings of a sorted sequence divided by count!,
// i.e. 1 / prod(multiplicity!).
inline Rational inverse_multiplicity_factor(const std::vector<int>& seq) {
  Integer denom = 1;
  std::size_t i = 0;
  while (i < seq.size()) {
    std::size_t j = i;
    while (j < seq.size() && seq[j] == seq[i]) ++j;
    denom *= factorial(static_cast<long>(j - i));
    i = j;
  }
  return make_rational(Integer(1), denom);
}

inline Monomial p_partials(const std::vector<int>& seq) {
  std::vector<Monomial::Factor> f;
  for (int i : seq) f.emplace_back(pvar(i).key(), 1);
  return Monomial::from_factors(std::move(f));
}

// Multiplier for q_index with q_0 -> genus: returns (scalar, monomial).
inline std::pair<Rational, Monomial> q_multiplier(int index, int genus) {
  if (index == 0) return {Rational(genus), Monomial{}};
  return {Rational(1), Monomial(qvar(static_cast<std::uint32_t>(index)))};
}

}  // namespace detail

// The second-order operator
//   D = 1/2 sum C(m+n,n) p_{m+n-1} d_{p_m} d_{p_n}
//       + sum C(m+n-1,n) q_{m+n-1} d_{q_m} d_{p_n} - sum q_{n-1} d_{p_n},
// built directly from its closed form. Lowers weight by one.
inline Operator make_d(const LieContext& ctx) {
  const int W = ctx.window;
  std::vector<OpTerm> terms;
  for (int m = 1; m <= W; ++m)
    for (int n = m; m + n <= W; ++n) {
      // Ordered pairs (m,n) and (n,m) each contribute 1/2 C(m+n, n).
      Rational c = m == n ? make_rational(binomial(m + n, n), 2)
                          : Rational(binomial(m + n, n));
      Monomial partials = Monomial(pvar(m)) * Monomial(pvar(n));
      terms.push_back({c, Monomial(pvar(m + n - 1)), partials});
    }
  for (int m = 1; m <= W; ++m)
    for (int n = 1; m + n <= W; ++n)
      terms.push_back({Rational(binomial(m + n - 1, n)), Monomial(qvar(m + n - 1)),
                       Monomial(qvar(m)) * Monomial(pvar(n))});
  for (int n = 1; n <= W; ++n) {
    auto [scalar, mult] = detail::q_multiplier(n - 1, ctx.genus);
    terms.push_back({-scalar, mult, Monomial(pvar(n))});
  }
  return Operator::from_terms(terms, W, -1);
}

// X_{m,n}: zero unless m, n >= 0 and m + n >= 2. Shifts weight by n - 1 and
// s-degree by m + n - 2.
inline Operator make_x(int m, int n, const LieContext& ctx) {
  const int W = ctx.window;
  const int shift = n - 1;
  if (m < 0 || n < 0 || m + n < 2) return Operator(W, shift);
  if (m == 0) {
    Poly mult = p(static_cast<std::uint32_t>(n - 1)) * Rational(factorial(n));
    return Operator::multiplication(mult, W);
  }

  // X_{m,n} = (-1)^m m! * [T1 + T2 - T3] where, summing over multisets,
  //   T1 = sum (n+S)! / (prod i! prod mult!) p_{n+S-1} d_p...      (m partials)
  //   T2 = sum (n+S+j-1)! / (prod i! (j-1)! prod mult!) q_{n+S+j-1} d_p... d_{q_j}
  //   T3 = sum (n+S)! / (prod i! prod mult!) q_{n+S-1} d_p...  (m-1 partials)
  // (the ordered-tuple sums of the closed formula collapsed onto multisets).
  Rational outer = Rational(factorial(m)) * (m % 2 ? -1 : 1);
  std::vector<OpTerm> terms;

  auto inv_fact_prod = [](const std::vector<int>& seq) {
    Integer d = 1;
    for (int i : seq) d *= factorial(i);
    return d;
  };

  detail::for_each_multiset(m, W, [&](const std::vector<int>& seq) {
    int S = 0;
    for (int i : seq) S += i;
    Rational c = make_rational(factorial(n + S), inv_fact_prod(seq)) *
                 detail::inverse_multiplicity_factor(seq);
    terms.push_back({outer * c, Monomial(pvar(n + S - 1)), detail::p_partials(seq)});
  });

  detail::for_each_multiset(m - 1, W, [&](const std::vector<int>& seq) {
    int S = 0;
    for (int i : seq) S += i;
    Rational base = make_rational(Integer(1), inv_fact_prod(seq)) *
                    detail::inverse_multiplicity_factor(seq);
    Monomial dp = detail::p_partials(seq);
    for (int j = 1; S + j <= W; ++j) {
      Rational c = base * make_rational(factorial(n + S + j - 1), factorial(j - 1));
      terms.push_back({outer * c, Monomial(qvar(n + S + j - 1)),
                       dp * Monomial(qvar(j))});
    }
    auto [scalar, mult] = detail::q_multiplier(n + S - 1, ctx.genus);
    Rational c3 = base * Rational(factorial(n + S)) * scalar;
    terms.push_back({-outer * c3, mult, dp});
  });
  return Operator::from_terms(terms, W, shift);
}

// Y_{m,n}: zero unless m, n >= 0. Shifts weight by n and s-degree by m + n.
// Y_{0,0} is the scalar genus.
inline Operator make_y(int m, int n, const LieContext& ctx) {
  const int W = ctx.window;
  if (m < 0 || n < 0) return Operator(W, n);
  Rational sign = m % 2 ? -1 : 1;
  std::vector<OpTerm> terms;
  detail::for_each_multiset(m, W, [&](const std::vector<int>& seq) {
    int S = 0;
    Integer d = 1;
    for (int i : seq) {
      S += i;
      d *= factorial(i);
    }
    Rational c = make_rational(factorial(m) * factorial(n + S), d) *
                 detail::inverse_multiplicity_factor(seq);
    auto [scalar, mult] = detail::q_multiplier(n + S, ctx.genus);
    terms.push_back({sign * c * scalar, mult, detail::p_partials(seq)});
  });
  return Operator::from_terms(terms, W, n);
}

// X~_{k,n} = X_{k,n} + k n Y_{k-1,n-1}.
inline Operator make_tilde_x(int k, int n, const LieContext& ctx) {
  Operator x = make_x(k, n, ctx);
  if (k <= 0 || n <= 0) return x;
  Operator r = x + make_y(k - 1, n - 1, ctx) * Rational(k * n);
  return Operator::from_map(r.to_map(), ctx.window, n - 1);
}

struct Sl2Triple {
  Operator e;
  Operator f;
  Operator h;
};

// e = multiplication by p1, f = -D, and h as the first-order operator
// sum (i+1) p_i d_{p_i} + sum j q_j d_{q_j} - g.
inline Sl2Triple make_sl2(const LieContext& ctx) {
  const int W = ctx.window;
  Operator e = Operator::multiplication(p(1), W);
  Operator f = -make_d(ctx);
  std::vector<OpTerm> h_terms;
  for (int i = 1; i <= W; ++i) {
    h_terms.push_back({Rational(i + 1), Monomial(pvar(i)), Monomial(pvar(i))});
    h_terms.push_back({Rational(i), Monomial(qvar(i)), Monomial(qvar(i))});
  }
  h_terms.push_back({Rational(-ctx.genus), Monomial{}, Monomial{}});
  return {e, f, Operator::from_terms(h_terms, W, 0)};
}

// Eigenvalue 2w - s - g of h on a bigraded monomial.
inline int h_eigenvalue(const Monomial& m, int genus) {
  return 2 * m.weight() - m.sdeg() - genus;
}

// ---------------------------------------------------------------------------
// Verification of bracket identities.

enum class IdentityKind { XX, XY, YY, Sl2, Tilde, HGrading, Upp, Upq, Uqq, Up, Uq };

inline std::string to_string(IdentityKind k) {
  switch (k) {
    case IdentityKind::XX: return "XX";
    case IdentityKind::XY: return "XY";
    case IdentityKind::YY: return "YY";
    case IdentityKind::Sl2: return "sl2";
    case IdentityKind::Tilde: return "tilde";
    case IdentityKind::HGrading: return "hgrading";
    case IdentityKind::Upp: return "Upp";
    case IdentityKind::Upq: return "Upq";
    case IdentityKind::Uqq: return "Uqq";
    case IdentityKind::Up: return "Up";
    case IdentityKind::Uq: return "Uq";
  }
  return "?";
}

struct BracketReport {
  std::string identity;
  std::vector<int> params;
  int genus = 0;
  int window = 0;
  bool ok = false;
  std::optional<std::string> counterexample;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["params"] = params;
    j["genus"] = genus;
    j["window"] = window;
    j["status"] = ok ? "verified" : "failed";
    if (counterexample) j["counterexample"] = *counterexample;
    return j;
  }
};

namespace detail {

inline BracketReport compare_ops(std::string identity, std::vector<int> params,
                                 const LieContext& ctx, const Operator& lhs,
                                 const Operator& rhs) {
  BracketReport rep{std::move(identity), std::move(params), ctx.genus, ctx.window,
                    false, std::nullopt};
  rep.ok = op_equal(lhs, rhs, ctx.window);
  if (!rep.ok) rep.counterexample = to_string((lhs - rhs).truncated(ctx.window));
  return rep;
}

inline BracketReport compare_polys(std::string identity, std::vector<int> params,
                                   const LieContext& ctx, const Poly& lhs,
                                   const Poly& rhs) {
  BracketReport rep{std::move(identity), std::move(params), ctx.genus, ctx.window,
                    lhs == rhs, std::nullopt};
  if (!rep.ok) rep.counterexample = (lhs - rhs).to_string();
  return rep;
}

// Operators whose brackets must be exact up to ctx.window are built with
// this much extra room.
inline int headroom(std::initializer_list<int> shifts) {
  int h = 0;
  for (int s : shifts) h = std::max(h, s);
  return h;
}

}  // namespace detail

// [X_{m,n}, X_{m',n'}] = (n m' - m n') X_{m+m'-1, n+n'-1}
inline BracketReport check_xx(int m, int n, int m2, int n2, const LieContext& ctx) {
  LieContext wide = ctx.widened(detail::headroom({n - 1, n2 - 1}));
  Operator lhs = commutator(make_x(m, n, wide), make_x(m2, n2, wide));
  Operator rhs = make_x(m + m2 - 1, n + n2 - 1, wide) * Rational(n * m2 - m * n2);
  return detail::compare_ops("[X,X]", {m, n, m2, n2}, ctx, lhs, rhs);
}

// [X_{m,n}, Y_{m',n'}] = (n m' - m n') Y_{m+m'-1, n+n'-1}
inline BracketReport check_xy(int m, int n, int m2, int n2, const LieContext& ctx) {
  LieContext wide = ctx.widened(detail::headroom({n - 1, n2}));
  Operator lhs = commutator(make_x(m, n, wide), make_y(m2, n2, wide));
  Operator rhs = make_y(m + m2 - 1, n + n2 - 1, wide) * Rational(n * m2 - m * n2);
  return detail::compare_ops("[X,Y]", {m, n, m2, n2}, ctx, lhs, rhs);
}

inline BracketReport check_yy(int m, int n, int m2, int n2, const LieContext& ctx) {
  LieContext wide = ctx.widened(detail::headroom({n, n2}));
  Operator lhs = commutator(make_y(m, n, wide), make_y(m2, n2, wide));
  return detail::compare_ops("[Y,Y]", {m, n, m2, n2}, ctx, lhs, Operator(wide.window, 0));
}

// [X~_{k,n}, X~_{k',n'}] = (n k' - n' k) X~_{k+k'-1,n+n'-1}
//     - 4 (C(n,2) C(k',2) - C(n',2) C(k,2)) Y_{k+k'-2,n+n'-2}
inline BracketReport check_tilde(int k, int n, int k2, int n2, const LieContext& ctx) {
  LieContext wide = ctx.widened(detail::headroom({n - 1, n2 - 1, n, n2}));
  Operator lhs = commutator(make_tilde_x(k, n, wide), make_tilde_x(k2, n2, wide));
  Integer y_coef = -4 * (binomial(n, 2) * binomial(k2, 2) - binomial(n2, 2) * binomial(k, 2));
  Operator rhs = make_tilde_x(k + k2 - 1, n + n2 - 1, wide) * Rational(n * k2 - n2 * k) +
                 make_y(k + k2 - 2, n + n2 - 2, wide) * Rational(y_coef);
  return detail::compare_ops("[X~,X~]", {k, n, k2, n2}, ctx, lhs, rhs);
}

// [h, X_{m,n}] = (n - m) X_{m,n} and [h, Y_{m,n}] = (n - m) Y_{m,n}.
inline std::vector<BracketReport> check_hgrading(int m, int n, const LieContext& ctx) {
  LieContext wide = ctx.widened(std::max(0, n));
  Operator h = make_sl2(wide).h;
  Operator x = make_x(m, n, wide);
  Operator y = make_y(m, n, wide);
  return {detail::compare_ops("[h,X]", {m, n}, ctx, commutator(h, x), x * Rational(n - m)),
          detail::compare_ops("[h,Y]", {m, n}, ctx, commutator(h, y), y * Rational(n - m))};
}

// [e,f] = h, [h,e] = 2e, [h,f] = -2f, h = -X_{1,1}, f = -X_{2,0}/2, e = X_{0,2}/2.
inline std::vector<BracketReport> check_sl2(const LieContext& ctx) {
  LieContext wide = ctx.widened(1);
  auto [e, f, h] = make_sl2(wide);
  std::vector<BracketReport> out;
  out.push_back(detail::compare_ops("[e,f]=h", {}, ctx, commutator(e, f), h));
  out.push_back(detail::compare_ops("[h,e]=2e", {}, ctx, commutator(h, e), e * Rational(2)));
  out.push_back(detail::compare_ops("[h,f]=-2f", {}, ctx, commutator(h, f), f * Rational(-2)));
  out.push_back(detail::compare_ops("h=-X11", {}, ctx, h, -make_x(1, 1, wide)));
  out.push_back(detail::compare_ops("f=-X20/2", {}, ctx, f,
                                    make_x(2, 0, wide) * make_rational(-1, 2)));
  out.push_back(detail::compare_ops("e=X02/2", {}, ctx, e,
                                    make_x(0, 2, wide) * make_rational(1, 2)));
  return out;
}

// [[f, p_n], p_m] = -C(m+n, m) p_{m+n-1}
inline BracketReport check_upp(int n, int m, const LieContext& ctx) {
  LieContext wide = ctx.widened(n + m);
  Operator f = make_sl2(wide).f;
  Operator lhs = commutator(commutator(f, Operator::multiplication(p(n), wide.window)),
                            Operator::multiplication(p(m), wide.window));
  Operator rhs = Operator::multiplication(
      p(static_cast<std::uint32_t>(m + n - 1)) * Rational(-binomial(m + n, m)), wide.window);
  return detail::compare_ops("[[f,p],p]", {n, m}, ctx, lhs, rhs);
}

// [[f, p_n], q_m] = -C(m+n-1, m-1) q_{m+n-1}
inline BracketReport check_upq(int n, int m, const LieContext& ctx) {
  LieContext wide = ctx.widened(n + m);
  Operator f = make_sl2(wide).f;
  Operator lhs = commutator(commutator(f, Operator::multiplication(p(n), wide.window)),
                            Operator::multiplication(q(m), wide.window));
  Operator rhs = Operator::multiplication(
      q(static_cast<std::uint32_t>(m + n - 1)) * Rational(-binomial(m + n - 1, m - 1)),
      wide.window);
  return detail::compare_ops("[[f,p],q]", {n, m}, ctx, lhs, rhs);
}

// [[f, q_n], q_m] = 0
inline BracketReport check_uqq(int n, int m, const LieContext& ctx) {
  LieContext wide = ctx.widened(n + m);
  Operator f = make_sl2(wide).f;
  Operator lhs = commutator(commutator(f, Operator::multiplication(q(n), wide.window)),
                            Operator::multiplication(q(m), wide.window));
  return detail::compare_ops("[[f,q],q]", {n, m}, ctx, lhs, Operator(wide.window, 0));
}

// f(p_n) = q_{n-1} with q_0 = g.
inline BracketReport check_up(int n, const LieContext& ctx) {
  Operator f = make_sl2(ctx).f;
  Poly expected = n == 1 ? Poly(Rational(ctx.genus)) : q(static_cast<std::uint32_t>(n - 1));
  return detail::compare_polys("f(p)=q", {n}, ctx, apply(f, p(n)), expected);
}

// f(q_n) = 0
inline BracketReport check_uq(int n, const LieContext& ctx) {
  Operator f = make_sl2(ctx).f;
  return detail::compare_polys("f(q)=0", {n}, ctx, apply(f, q(n)), Poly{});
}

// Dispatches one identity. `params` holds (m,n,m',n') for XX/XY/YY/Tilde,
// (m,n) for HGrading, (n,m) for Upp/Upq/Uqq and (n) for Up/Uq.
inline std::vector<BracketReport> verify_bracket(IdentityKind kind,
                                                 const std::vector<int>& params,
                                                 const LieContext& ctx) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw std::invalid_argument(to_string(kind) + " expects " + std::to_string(k) +
                                  " parameters");
  };
  switch (kind) {
    case IdentityKind::XX:
      need(4);
      return {check_xx(params[0], params[1], params[2], params[3], ctx)};
    case IdentityKind::XY:
      need(4);
      return {check_xy(params[0], params[1], params[2], params[3], ctx)};
    case IdentityKind::YY:
      need(4);
      return {check_yy(params[0], params[1], params[2], params[3], ctx)};
    case IdentityKind::Tilde:
      need(4);
      return {check_tilde(params[0], params[1], params[2], params[3], ctx)};
    case IdentityKind::HGrading:
      need(2);
      return check_hgrading(params[0], params[1], ctx);
    case IdentityKind::Sl2:
      need(0);
      return check_sl2(ctx);
    case IdentityKind::Upp:
      need(2);
      return {check_upp(params[0], params[1], ctx)};
    case IdentityKind::Upq:
      need(2);
      return {check_upq(params[0], params[1], ctx)};
    case IdentityKind::Uqq:
      need(2);
      return {check_uqq(params[0], params[1], ctx)};
    case IdentityKind::Up:
      need(1);
      return {check_up(params[0], ctx)};
    case IdentityKind::Uq:
      need(1);
      return {check_uq(params[0], ctx)};
  }
  return {};
}

// Full sweep: every X/Y/X~ pair with m+n, m'+n' <= max_order, the sl2
// triple, h-gradings, the second-bracket identities with n+m <= max_order + 2,
// and f(p_n), f(q_n) for n <= window.
inline std::vector<BracketReport> verify_lie(int max_order, const LieContext& ctx) {
  std::vector<std::pair<int, int>> xs, ys;
  for (int s = 0; s <= max_order; ++s)
    for (int m = 0; m <= s; ++m) {
      ys.emplace_back(m, s - m);
      if (s >= 2) xs.emplace_back(m, s - m);
    }
  std::vector<BracketReport> out;
  for (auto [m, n] : xs)
    for (auto [m2, n2] : xs) out.push_back(check_xx(m, n, m2, n2, ctx));
  for (auto [m, n] : xs)
    for (auto [m2, n2] : ys) out.push_back(check_xy(m, n, m2, n2, ctx));
  for (auto [m, n] : ys)
    for (auto [m2, n2] : ys) out.push_back(check_yy(m, n, m2, n2, ctx));
  // X~_{k,n} = k! A_n([C]_{k+n-2}) is only defined for k + n >= 2.
  for (auto [k, n] : xs)
    for (auto [k2, n2] : xs) out.push_back(check_tilde(k, n, k2, n2, ctx));
  for (auto& r : check_sl2(ctx)) out.push_back(std::move(r));
  for (auto [m, n] : xs)
    for (auto& r : check_hgrading(m, n, ctx)) out.push_back(std::move(r));
  int cap = max_order + 2;
  for (int n = 1; n < cap; ++n)
    for (int m = 1; n + m <= cap; ++m) {
      out.push_back(check_upp(n, m, ctx));
      out.push_back(check_upq(n, m, ctx));
      out.push_back(check_uqq(n, m, ctx));
    }
  for (int n = 1; n <= ctx.window; ++n) {
    out.push_back(check_up(n, ctx));
    out.push_back(check_uq(n, ctx));
  }
  return out;
}

}  // namespace tautjac

#include <gtest/gtest.h>

#include <map>

#include <tautjac/liegen.hpp>

#include "generators.hpp"

using namespace tautjac;
using tautjac::testing::Gen;
using tautjac::testing::monomials_up_to;

namespace {

Poly mono(const char* name) {
  // Tiny helper for hand tables: "p1^2*q1" style names built from factors.
  Poly r(1);
  std::string s(name);
  std::size_t i = 0;
  while (i < s.size()) {
    char kind = s[i++];
    std::uint32_t idx = 0, e = 1;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) idx = idx * 10 + (s[i++] - '0');
    if (i < s.size() && s[i] == '^') {
      ++i;
      e = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e = e * 10 + (s[i++] - '0');
    }
    if (i < s.size() && s[i] == '*') ++i;
    r *= pow(kind == 'p' ? p(idx) : q(idx), e);
  }
  return r;
}

bool all_ok(const std::vector<BracketReport>& reports, std::string* first_failure = nullptr) {
  for (const auto& r : reports)
    if (!r.ok) {
      if (first_failure) *first_failure = r.identity + " " + r.to_json().dump();
      return false;
    }
  return true;
}

}  // namespace

TEST(LieContext, RejectsSmallGenus) {
  EXPECT_THROW(LieContext(1, 5), invalid_genus);
  EXPECT_THROW(LieContext(0, 5), invalid_genus);
  EXPECT_NO_THROW(LieContext(2, 5));
}

TEST(DOperator, GenusTwoWeightThreeTable) {
  // Hand-computed images of every weight-3 monomial at g = 2.
  const std::map<std::string, Poly> expected = {
      {"p3", -q(2)},
      {"q3", Poly()},
      {"p1*p2", p(2) - p(1) * q(1)},
      {"p1*q2", Poly()},
      {"q1*p2", q(2) - q(1) * q(1)},
      {"q1*q2", Poly()},
      {"p1^3", Poly()},
      {"p1^2*q1", Poly()},
      {"p1*q1^2", Poly()},
      {"q1^3", Poly()},
  };
  Operator d = make_d(LieContext(2, 3));
  auto ms = enumerate_monomials(3);
  ASSERT_EQ(ms.size(), expected.size());
  for (const auto& m : ms) {
    auto it = expected.find(m.to_string());
    ASSERT_NE(it, expected.end()) << m;
    EXPECT_EQ(apply(d, Poly(m)), it->second) << "D(" << m << ")";
  }
}

TEST(DOperator, GenusThreeChain) {
  Operator d = make_d(LieContext(3, 5));
  Poly once = apply(d, mono("p2^2"));
  EXPECT_EQ(once, 6 * p(3) - 2 * q(1) * p(2));
  EXPECT_EQ(apply(d, once), -8 * q(2) + 2 * q(1) * q(1));
  EXPECT_EQ(apply(d, mono("p1*p3")), p(3) - p(1) * q(2));
  EXPECT_EQ(apply(d, mono("q1*p4")), q(4) - q(1) * q(3));
}

TEST(DOperator, PowersOfP1) {
  for (int g = 2; g <= 6; ++g) {
    Operator d = make_d(LieContext(g, 9));
    for (unsigned k = 1; k <= 9; ++k) {
      Poly expected = pow(p(1), k - 1) * Rational(static_cast<long>(k) * (static_cast<long>(k) - 1 - g));
      ASSERT_EQ(apply(d, pow(p(1), k)), expected) << "g=" << g << " k=" << k;
    }
  }
}

TEST(DOperator, OnGeneratorsAndWeightShift) {
  const int g = 4;
  Operator d = make_d(LieContext(g, 10));
  EXPECT_EQ(apply(d, p(1)), Poly(Rational(-g)));
  for (unsigned n = 2; n <= 10; ++n) {
    EXPECT_EQ(apply(d, p(n)), -q(n - 1));
    EXPECT_TRUE(apply(d, q(n)).is_zero());
  }
  for (const auto& t : d.terms()) EXPECT_EQ(t.weight_shift(), -1);
}

TEST(DOperator, KeepsSubringWithoutP1) {
  Gen gen(31);
  Operator d = make_d(LieContext(5, 8));
  for (int trial = 0; trial < 200; ++trial) {
    Monomial m = gen.monomial(gen.integer(1, 8));
    if (m.exponent(pvar(1)) > 0) continue;
    Poly image = apply(d, Poly(m));
    for (const auto& [out, c] : image.terms())
      ASSERT_EQ(out.exponent(pvar(1)), 0u) << "D(" << m << ") contains p1";
  }
}

TEST(XOperator, SmallCases) {
  LieContext ctx(3, 6);
  EXPECT_TRUE(op_equal(make_x(0, 3, ctx), Operator::multiplication(6 * p(2), 6), 6));
  EXPECT_TRUE(op_equal(make_x(0, 2, ctx), Operator::multiplication(2 * p(1), 6), 6));
  EXPECT_TRUE(op_equal(make_x(2, 0, ctx), make_d(ctx) * Rational(2), 6));
  EXPECT_TRUE(make_x(1, 0, ctx).is_zero());
  EXPECT_TRUE(make_x(-1, 3, ctx).is_zero());
  for (int g = 2; g <= 6; ++g) {
    LieContext c(g, 4);
    EXPECT_EQ(apply(make_x(1, 1, c), p(2)), p(2) * Rational(g - 3)) << "g=" << g;
  }
}

TEST(YOperator, SmallCases) {
  LieContext ctx(3, 6);
  EXPECT_TRUE(op_equal(make_y(0, 2, ctx), Operator::multiplication(2 * q(2), 6), 6));
  EXPECT_TRUE(op_equal(make_y(0, 0, ctx), Operator::scalar(3, 6), 6));
  std::vector<OpTerm> terms;
  for (int i = 1; i <= 6; ++i) terms.push_back({-1, Monomial(qvar(i)), Monomial(pvar(i))});
  EXPECT_TRUE(op_equal(make_y(1, 0, ctx), Operator::from_terms(terms, 6, 0), 6));
}

TEST(TildeX, RelationToX) {
  LieContext ctx(4, 7);
  for (int n = 2; n <= 5; ++n) EXPECT_TRUE(op_equal(make_tilde_x(0, n, ctx), make_x(0, n, ctx), 7));
  EXPECT_TRUE(op_equal(make_tilde_x(1, 1, ctx), make_x(1, 1, ctx) + Operator::scalar(4, 7), 7));
  EXPECT_TRUE(op_equal(make_tilde_x(2, 3, ctx),
                       make_x(2, 3, ctx) + make_y(1, 2, ctx) * Rational(6), 7));
}

TEST(Brackets, NamedExamples) {
  LieContext ctx(3, 8);
  LieContext wide = ctx.widened(2);
  Operator c = commutator(make_x(0, 2, wide), make_x(2, 0, wide));
  EXPECT_TRUE(op_equal(c, make_x(1, 1, wide) * Rational(4), 8));
  EXPECT_FALSE(op_equal(c, make_x(1, 1, wide) * Rational(-4), 8));
  Operator c2 = commutator(make_x(1, 2, wide), make_x(2, 1, wide));
  EXPECT_TRUE(op_equal(c2, make_x(2, 2, wide) * Rational(3), 8));
  Operator c3 = commutator(make_y(1, 2, wide), make_y(2, 1, wide));
  EXPECT_TRUE(op_equal(c3, Operator(c3.window(), 0), 8));
}

TEST(Brackets, Sl2Triple) {
  for (int g : {2, 3, 7}) {
    std::string why;
    EXPECT_TRUE(all_ok(check_sl2(LieContext(g, 8)), &why)) << why;
  }
}

TEST(Brackets, HIsDiagonal) {
  Gen gen(32);
  for (int g : {2, 5}) {
    Operator h = make_sl2(LieContext(g, 8)).h;
    for (const auto& m : monomials_up_to(6))
      ASSERT_EQ(apply(h, Poly(m)), Poly(m) * Rational(h_eigenvalue(m, g))) << m;
  }
}

TEST(Brackets, TildeFamily) {
  for (int g : {2, 3, 5}) {
    LieContext ctx(g, 8);
    std::vector<std::pair<int, int>> idx;
    for (int s = 2; s <= 5; ++s)
      for (int k = 0; k <= s; ++k) idx.emplace_back(k, s - k);
    for (auto [k, n] : idx)
      for (auto [k2, n2] : idx) {
        auto r = check_tilde(k, n, k2, n2, ctx);
        ASSERT_TRUE(r.ok) << r.to_json().dump();
      }
  }
}

TEST(Brackets, SecondBracketsAndGenerators) {
  LieContext ctx(4, 8);
  for (int n = 1; n <= 7; ++n)
    for (int m = 1; n + m <= 8; ++m) {
      ASSERT_TRUE(check_upp(n, m, ctx).ok) << n << "," << m;
      ASSERT_TRUE(check_upq(n, m, ctx).ok) << n << "," << m;
      ASSERT_TRUE(check_uqq(n, m, ctx).ok) << n << "," << m;
    }
  for (int n = 1; n <= 8; ++n) {
    ASSERT_TRUE(check_up(n, ctx).ok);
    ASSERT_TRUE(check_uq(n, ctx).ok);
  }
}

TEST(Brackets, SmallSweep) {
  std::string why;
  auto reports = verify_lie(3, LieContext(2, 6));
  EXPECT_GT(reports.size(), 100u);
  EXPECT_TRUE(all_ok(reports, &why)) << why;
}

TEST(Brackets, DispatchAndArity) {
  LieContext ctx(3, 6);
  auto r = verify_bracket(IdentityKind::XX, {0, 2, 2, 0}, ctx);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].ok);
  EXPECT_EQ(r[0].to_json()["status"], "verified");
  EXPECT_EQ(r[0].to_json()["params"], nlohmann::ordered_json({0, 2, 2, 0}));
  EXPECT_THROW(verify_bracket(IdentityKind::XX, {0, 2}, ctx), std::invalid_argument);
  EXPECT_EQ(verify_bracket(IdentityKind::Sl2, {}, ctx).size(), 6u);
}

TEST(Brackets, FailureCarriesCounterexample) {
  LieContext ctx(3, 6);
  auto rep = detail::compare_ops("bogus", {}, ctx, make_x(1, 1, ctx), make_x(1, 1, ctx) * Rational(2));
  EXPECT_FALSE(rep.ok);
  ASSERT_TRUE(rep.counterexample.has_value());
  EXPECT_FALSE(rep.counterexample->empty());
  EXPECT_EQ(rep.to_json()["status"], "failed");
}

TEST(Grading, XAndYShiftBidegreeUniformly) {
  // X_{m,n}: (w, s) -> (w + n - 1, s + m + n - 2); Y_{m,n}: (w, s) -> (w + n, s + m + n).
  Gen gen(33);
  for (int g : {2, 3, 6}) {
    LieContext ctx(g, 7);
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; m + n <= 5; ++n) {
        Operator x = make_x(m, n, ctx), y = make_y(m, n, ctx);
        for (const auto& t : x.terms()) {
          ASSERT_EQ(t.weight_shift(), n - 1);
          ASSERT_EQ(t.multiplier.sdeg() - t.partials.sdeg(), m + n - 2);
        }
        for (const auto& t : y.terms()) {
          ASSERT_EQ(t.weight_shift(), n);
          ASSERT_EQ(t.multiplier.sdeg() - t.partials.sdeg(), m + n);
        }
        for (int trial = 0; trial < 10; ++trial) {
          Monomial mono = gen.monomial(gen.integer(0, 7));
          Poly xi = apply(x, Poly(mono)), yi = apply(y, Poly(mono));
          for (const auto& [out, c] : xi.terms()) {
            ASSERT_EQ(out.weight(), mono.weight() + n - 1);
            ASSERT_EQ(out.sdeg(), mono.sdeg() + m + n - 2);
          }
          for (const auto& [out, c] : yi.terms()) {
            ASSERT_EQ(out.weight(), mono.weight() + n);
            ASSERT_EQ(out.sdeg(), mono.sdeg() + m + n);
          }
        }
      }
  }
}

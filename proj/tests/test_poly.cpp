#include <gtest/gtest.h>

#include <set>

#include <tautjac/poly.hpp>

#include "generators.hpp"

using namespace tautjac;
using tautjac::testing::Gen;

namespace {

// Number of monomials of weight w: coefficient of x^w in prod_i (1 - x^i)^-2,
// computed by a knapsack over the 2w variables of weight <= w.
long count_monomials(int w) {
  std::vector<long> c(w + 1, 0);
  c[0] = 1;
  for (int i = 1; i <= w; ++i)
    for (int copy = 0; copy < 2; ++copy)
      for (int k = i; k <= w; ++k) c[k] += c[k - i];
  return c[w];
}

}  // namespace

TEST(Variable, WeightAndSDegree) {
  EXPECT_EQ(pvar(3).weight(), 3);
  EXPECT_EQ(pvar(3).sdeg(), 2);
  EXPECT_EQ(qvar(3).weight(), 3);
  EXPECT_EQ(qvar(3).sdeg(), 3);
  EXPECT_EQ(Variable::from_key(pvar(5).key()).name(), "p5");
  EXPECT_EQ(Variable::from_key(qvar(5).key()).name(), "q5");
  EXPECT_THROW(pvar(0), std::invalid_argument);
}

TEST(Monomial, BigradingOfProducts) {
  Monomial m = Monomial(pvar(1), 2) * Monomial(qvar(3));
  EXPECT_EQ(m.weight(), 5);
  EXPECT_EQ(m.sdeg(), 3);
  EXPECT_EQ(m.pdeg(), 2);
  EXPECT_EQ(m.qdeg(), 1);
  EXPECT_EQ(m.to_string(), "p1^2*q3");
  EXPECT_EQ(Monomial{}.to_string(), "1");
}

TEST(Monomial, DivisionInvertsMultiplication) {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    Monomial a = gen.monomial(gen.integer(0, 8));
    Monomial b = gen.monomial(gen.integer(0, 8));
    Monomial ab = a * b;
    ASSERT_TRUE(ab.divisible_by(a));
    ASSERT_TRUE(ab.divisible_by(b));
    ASSERT_EQ(ab.quotient(a), b);
    ASSERT_EQ(ab.weight(), a.weight() + b.weight());
  }
}

TEST(Monomial, OrderIsTotalAndCompatibleWithMultiplication) {
  Gen gen(12);
  for (int trial = 0; trial < 300; ++trial) {
    Monomial a = gen.monomial(gen.integer(0, 6));
    Monomial b = gen.monomial(gen.integer(0, 6));
    Monomial c = gen.monomial(gen.integer(0, 6));
    int ab = (a < b) + (b < a) + (a == b);
    ASSERT_EQ(ab, 1);
    if (a < b) {
      ASSERT_LT(a * c, b * c);
    }
  }
  // Highest variable decides: q2 > p2 > q1^5.
  EXPECT_LT(Monomial(qvar(1), 5), Monomial(pvar(2)));
  EXPECT_LT(Monomial(pvar(2)), Monomial(qvar(2)));
}

TEST(Poly, ArithmeticExamples) {
  Poly f = p(1) * q(1) + p(1) * q(1);
  EXPECT_EQ(f, 2 * p(1) * q(1));
  EXPECT_TRUE((p(2) - p(2)).is_zero());
  EXPECT_EQ((p(1) + q(1)) * (p(1) - q(1)), p(1) * p(1) - q(1) * q(1));
  EXPECT_EQ(pow(p(1), 3).max_weight(), 3);
  EXPECT_EQ(Poly().max_weight(), -1);
}

TEST(Poly, TextForm) {
  EXPECT_EQ(Poly().to_string(), "0");
  EXPECT_EQ((-p(1)).to_string(), "-p1");
  Poly f = make_rational(3, 4) * p(1) * q(1) * q(1);
  EXPECT_EQ(f.to_string(), "3/4*p1*q1^2");
  EXPECT_EQ((p(2) - p(1) * q(1)).to_string(), "p2 - p1*q1");
  EXPECT_EQ((q(2) - make_rational(1, 4) * q(1) * q(1)).to_string(), "q2 - 1/4*q1^2");
  EXPECT_EQ(Poly(make_rational(-5, 2)).to_string(), "-5/2");
}

TEST(Poly, RingAxiomsOnRandomInputs) {
  Gen gen(13);
  for (int trial = 0; trial < 150; ++trial) {
    Poly a = gen.poly(4), b = gen.poly(4), c = gen.poly(4);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a - a, Poly());
    ASSERT_EQ(a * Poly(1), a);
    ASSERT_TRUE((a * Poly()).is_zero());
  }
}

TEST(Poly, NoStoredZeroCoefficients) {
  Gen gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    Poly a = gen.poly(4, 6), b = gen.poly(4, 6);
    for (const Poly& f : {a + b, a - b, a * b})
      for (const auto& [m, c] : f.terms()) ASSERT_NE(c, 0);
  }
}

TEST(Partial, ExamplesAndLeibniz) {
  EXPECT_EQ(partial(pvar(1), pow(p(1), 3) * q(2)), 3 * pow(p(1), 2) * q(2));
  EXPECT_TRUE(partial(qvar(3), p(1) * q(2)).is_zero());
  Gen gen(15);
  for (int trial = 0; trial < 100; ++trial) {
    Poly a = gen.poly(5), b = gen.poly(5);
    Variable v = gen.coin() ? pvar(gen.integer(1, 3)) : qvar(gen.integer(1, 3));
    Variable u = gen.coin() ? pvar(gen.integer(1, 3)) : qvar(gen.integer(1, 3));
    ASSERT_EQ(partial(v, a * b), partial(v, a) * b + a * partial(v, b));
    ASSERT_EQ(partial(v, partial(u, a)), partial(u, partial(v, a)));
  }
}

TEST(Grading, GradeSplitsByWeightAndSDegree) {
  Poly f = p(2) + q(2) + p(1) * q(1) + 3;
  auto parts = grade(f);
  EXPECT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts.at({2, 1}), p(2) + p(1) * q(1));
  EXPECT_EQ(parts.at({2, 2}), q(2));
  EXPECT_EQ(parts.at({0, 0}), Poly(3));
  auto weights = by_weight(f);
  EXPECT_EQ(weights.at(2), p(2) + q(2) + p(1) * q(1));

  Gen gen(16);
  for (int trial = 0; trial < 50; ++trial) {
    Poly g = gen.poly(6, 8);
    Poly sum;
    for (const auto& [key, part] : grade(g)) {
      for (const auto& [m, c] : part.terms()) {
        ASSERT_EQ(m.weight(), key.first);
        ASSERT_EQ(m.sdeg(), key.second);
      }
      sum += part;
    }
    ASSERT_EQ(sum, g);
  }
}

TEST(Enumerate, SmallWeightsByHand) {
  auto w2 = enumerate_monomials(2);
  std::set<std::string> names;
  for (const auto& m : w2) names.insert(m.to_string());
  EXPECT_EQ(names, (std::set<std::string>{"p2", "q2", "p1^2", "p1*q1", "q1^2"}));
  EXPECT_EQ(enumerate_monomials(3).size(), 10u);
}

TEST(Enumerate, CountsMatchGeneratingFunction) {
  for (int w = 0; w <= 12; ++w) {
    auto ms = enumerate_monomials(w);
    ASSERT_EQ(static_cast<long>(ms.size()), count_monomials(w)) << "w=" << w;
    std::set<Monomial> distinct(ms.begin(), ms.end());
    ASSERT_EQ(distinct.size(), ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
      ASSERT_EQ(ms[i].weight(), w);
      if (i) {
        ASSERT_LT(ms[i], ms[i - 1]) << "enumeration must be descending";
      }
    }
  }
  EXPECT_EQ(count_monomials(12), 1165);
}

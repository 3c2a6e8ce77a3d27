#include <gtest/gtest.h>

#include <tautjac/fourier.hpp>
#include <tautjac/parse.hpp>

#include "generators.hpp"

using namespace tautjac;
using tautjac::testing::Gen;

TEST(Parse, Examples) {
  EXPECT_EQ(parse_poly("p2*q1 - 3/4*p1*q1^2"),
            p(2) * q(1) - make_rational(3, 4) * p(1) * q(1) * q(1));
  EXPECT_EQ(parse_poly("(p1+q1)^2"), p(1) * p(1) + 2 * p(1) * q(1) + q(1) * q(1));
  EXPECT_EQ(parse_poly("q12"), q(12));
  EXPECT_EQ(parse_poly("  7/14 "), Poly(make_rational(1, 2)));
  EXPECT_EQ(parse_poly("p1 \xE2\x88\x92 q1"), p(1) - q(1));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_poly("-p1^2"), -(p(1) * p(1)));
  EXPECT_EQ(parse_poly("2*p1^3"), 2 * pow(p(1), 3));
  EXPECT_EQ(parse_poly("p1 - q1 - p2"), p(1) - q(1) - p(2));
  EXPECT_EQ(parse_poly("p1 + q1*p2"), p(1) + q(1) * p(2));
  EXPECT_EQ(parse_poly("(p1)^0"), Poly(1));
  EXPECT_EQ(parse_poly("--p1"), p(1));
}

TEST(Parse, IndexZeroIsRejected) {
  try {
    parse_poly("p1 + q0");
    FAIL() << "expected index_zero";
  } catch (const index_zero& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse_poly("p0"), index_zero);
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  struct Case {
    const char* src;
    std::size_t pos;
  };
  for (auto [src, pos] : {Case{"p1 +", 4}, Case{"p1 ** q1", 4}, Case{"(p1 + q1", 8},
                          Case{"x1", 0}, Case{"p", 1}, Case{"p1^", 3}, Case{"3/0", 0},
                          Case{"p1 q1", 3}, Case{"p1^-2", 3}}) {
    try {
      parse_poly(src);
      ADD_FAILURE() << "no error for " << src;
    } catch (const syntax_error& e) {
      EXPECT_EQ(e.position(), pos) << src << ": " << e.what();
    }
  }
  EXPECT_THROW(parse_poly("p1^99999"), syntax_error);
}

TEST(Parse, MonomialText) {
  EXPECT_EQ(parse_monomial("p1^2*q3"), Monomial(pvar(1), 2) * Monomial(qvar(3)));
  EXPECT_EQ(parse_monomial("1"), Monomial{});
  EXPECT_THROW(parse_monomial("2*p1"), syntax_error);
  EXPECT_THROW(parse_monomial("p1 + q1"), syntax_error);
}

TEST(Parse, PrintParseFixedPointOnRandomPolys) {
  Gen gen(71);
  for (int trial = 0; trial < 300; ++trial) {
    Poly f = gen.poly(8, 6);
    std::string text = f.to_string();
    ASSERT_EQ(parse_poly(text), f) << text;
    ASSERT_EQ(parse_poly(text).to_string(), text);
  }
}

TEST(Parse, PrintParseFixedPointOnEngineOutput) {
  for (int g = 2; g <= 6; ++g) {
    auto I = std::make_shared<const RelationIdeal>(RelationIdeal::build(g));
    FourierMap F(I);
    for (int w = 0; w <= g; ++w) {
      for (const Poly& r : I->relations(w)) ASSERT_EQ(parse_poly(r.to_string()), r);
      for (const auto& b : I->quotient_basis(w)) {
        Poly s = F.transform(Poly(b));
        ASSERT_EQ(parse_poly(s.to_string()), s);
        ASSERT_EQ(parse_monomial(b.to_string()), b);
      }
    }
  }
}

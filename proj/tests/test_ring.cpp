#include <gtest/gtest.h>

#include "nsbench/polynomial.hpp"
#include "support.hpp"

using namespace nsbench;
using nsbench::testing::P;

namespace {

const Field Q = Field::rationals();
const Field F5 = Field::prime(5);

std::vector<Monomial> all_monomials(const std::vector<Var>& vs, unsigned max_deg) {
  std::vector<Monomial> out{Monomial()};
  for (Var v : vs) {
    std::vector<Monomial> next;
    for (const auto& m : out) {
      for (unsigned e = 0; e + m.degree() <= max_deg; ++e) next.push_back(m * Monomial::of(v, e));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Scalar, FieldArithmetic) {
  EXPECT_EQ(parse_scalar(Q, "-6/4").to_string(), "-3/2");
  EXPECT_EQ(Scalar::from_int(F5, -1).residue(), 4U);
  EXPECT_EQ(Scalar::from_rational(Field::prime(7), mpq_class(-1, 6)).residue(), 1U);
  EXPECT_THROW(Scalar::from_int(F5, 1) + Scalar::from_int(Q, 1), FieldMismatch);
  EXPECT_THROW(Scalar(Q).inverse(), DivisionByZero);
  EXPECT_THROW(Field::prime(91), InvalidArgument);
  EXPECT_EQ(Field::parse("fp:101").characteristic(), 101U);
}

TEST(Polynomial, ProductExamples) {
  EXPECT_EQ(P("x_1 + x_2").pow(2), P("x_1^2 + 2*x_1*x_2 + x_2^2"));
  const auto f = P("3*x_1*x_2 - 1/2*x_3");
  EXPECT_EQ(f * Polynomial::constant(Q, 1), f);
  EXPECT_EQ(P("x_1 - 1", F5) * P("x_1 + 1", F5), P("x_1^2 + 4", F5));
  EXPECT_THROW(P("x_1") * P("x_1", F5), FieldMismatch);
}

TEST(Polynomial, Substitute) {
  Substitution gadget{{var("x_1"), P("x_1*y_1")}, {var("x_2"), P("x_2*y_2")}};
  EXPECT_EQ(substitute(P("x_1 + x_2"), gadget), P("x_1*y_1 + x_2*y_2"));
  EXPECT_EQ(substitute(P("x_1^2 - 7"), {}), P("x_1^2 - 7"));
  EXPECT_EQ(substitute(P("y_1"), {{var("y_1"), P("x_1 + y_1")}}), P("x_1 + y_1"));
  // simultaneous, not sequential
  EXPECT_EQ(substitute(P("x_1 - x_2"), {{var("x_1"), P("x_2")}, {var("x_2"), P("x_1")}}), P("x_2 - x_1"));
  EXPECT_THROW(substitute(P("x_1"), {{var("x_1"), P("x_2", F5)}}), FieldMismatch);
}

TEST(Polynomial, LeadingMonomial) {
  const auto grlex = MonomialOrder::grlex();
  EXPECT_EQ(leading_monomial(P("x_1 + x_1*x_2"), grlex).to_string(), "x_1*x_2");
  const auto lt = leading_term(P("3*x_1^2 + x_2^3"), MonomialOrder::grlex({var("x_2"), var("x_1")}));
  EXPECT_EQ(lt.first.to_string(), "x_2^3");
  EXPECT_EQ(leading_monomial(P("x_1 + 1") * P("x_2 + 1")).to_string(), "x_1*x_2");
  EXPECT_EQ(trailing_term(P("x_1 + 1/3"), grlex).second, parse_scalar(Q, "1/3"));
  EXPECT_THROW(leading_term(Polynomial(Q)), InvalidArgument);
  // lex: x_1 dominates any power of x_2
  EXPECT_EQ(leading_monomial(P("x_2^5 + x_1"), MonomialOrder::lex()).to_string(), "x_1");
}

TEST(Polynomial, Eval) {
  Point ones{{var("x_1"), Scalar::one(Q)}, {var("x_2"), Scalar::one(Q)}, {var("y_1"), Scalar::one(Q)},
             {var("y_2"), Scalar::one(Q)}};
  EXPECT_TRUE(eval(P("x_1*y_2 - y_1*x_2"), ones).is_zero());
  EXPECT_EQ(eval(P("x_1 + x_2 - 3"), ones), Scalar::from_int(Q, -1));
  EXPECT_EQ(eval(P("x_1^4", F5), {{var("x_1"), Scalar::from_int(F5, 2)}}), Scalar::one(F5));
  EXPECT_THROW(eval(P("x_1 + x_9"), ones), InvalidArgument);
}

TEST(Polynomial, ParsePrintRoundTrip) {
  for (const Field& f : {Q, Field::prime(101)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = nsbench::testing::rand_poly(f, 5, 8, 3);
      const auto text = p.to_string();
      const auto back = Polynomial::parse(text, f);
      EXPECT_EQ(back, p) << text;
      EXPECT_EQ(back.to_string(), text);
    }
  }
  EXPECT_EQ(P(" - 2 * z_1_2_3_4 ^2 + 1/2 ").to_string(), "-2*z_1_2_3_4^2 + 1/2");
  EXPECT_EQ(P("0").to_string(), "0");
  EXPECT_THROW(P("x"), ParseError);
  EXPECT_THROW(P("x_1 +"), ParseError);
  EXPECT_THROW(P("2/0*x_1"), ParseError);
}

TEST(Polynomial, RingAxiomsRandom) {
  for (const Field& f : {Q, Field::prime(7)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = nsbench::testing::rand_poly(f, 6, 5, 2);
      const auto b = nsbench::testing::rand_poly(f, 6, 5, 2);
      const auto c = nsbench::testing::rand_poly(f, 6, 5, 2);
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ(a + b, b + a);
      ASSERT_TRUE((a - a).is_zero());
    }
  }
}

TEST(MonomialOrder, AxiomsExhaustive) {
  const auto xs = var_range("x", 3);
  const auto ms = all_monomials(xs, 4);
  for (const auto& ord : {MonomialOrder::grlex(), MonomialOrder::lex(), MonomialOrder::grlex({xs[2], xs[0], xs[1]})}) {
    for (const auto& a : ms) {
      if (!a.is_one()) {
        ASSERT_LT(ord.compare(Monomial(), a), 0);
      }
      for (const auto& b : ms) {
        const int ab = ord.compare(a, b);
        ASSERT_EQ(ab, -ord.compare(b, a));
        ASSERT_EQ(ab == 0, a == b);
        for (const auto& c : ms) {
          if (c.degree() > 2) continue;
          ASSERT_EQ(ord.compare(a * c, b * c), ab);
          if (ab < 0 && ord.compare(b, c) < 0) {
            ASSERT_LT(ord.compare(a, c), 0);
          }
        }
      }
    }
  }
}

TEST(MonomialOrder, GrlexRespectsDegree) {
  const auto xs = var_range("x", 3);
  const auto ms = all_monomials(xs, 5);
  const auto ord = MonomialOrder::grlex();
  for (const auto& a : ms) {
    for (const auto& b : ms) {
      if (a.degree() > b.degree()) {
        ASSERT_GT(ord.compare(a, b), 0);
      }
    }
  }
}

TEST(MonomialOrder, LeadingTermMultiplicative) {
  const auto ord = MonomialOrder::grlex();
  for (const Field& f : {Q, Field::prime(5)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = nsbench::testing::rand_poly(f, 5, 6, 3);
      const auto b = nsbench::testing::rand_poly(f, 5, 6, 3);
      if (a.is_zero() || b.is_zero()) continue;
      const auto [lma, lca] = leading_term(a, ord);
      const auto [lmb, lcb] = leading_term(b, ord);
      const auto [lmp, lcp] = leading_term(a * b, ord);
      ASSERT_EQ(lmp, lma * lmb);
      ASSERT_EQ(lcp, lca * lcb);
      ASSERT_EQ(trailing_term(a * b, ord).first, trailing_term(a, ord).first * trailing_term(b, ord).first);
    }
  }
}

TEST(Polynomial, DegreeHelpers) {
  const auto f = P("x_1^3*y_2 + x_2*y_1 - 4");
  EXPECT_EQ(f.degree(), 4);
  EXPECT_EQ(f.individual_degree(), 3U);
  EXPECT_EQ(f.homogeneous_slice(2), P("x_2*y_1"));
  EXPECT_EQ(derivative(f, var("x_1")), P("3*x_1^2*y_2"));
  EXPECT_EQ(f.variables().size(), 4U);
  EXPECT_EQ(var_name(f.variables().front()), "x_1");
  EXPECT_EQ(Polynomial(Q).degree(), -1);
}

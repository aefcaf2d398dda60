#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "nambu/parser.hpp"
#include "nambu/polynomial.hpp"
#include "support/generators.hpp"

using namespace nambu;

namespace {

const std::vector<std::string> kQPU{"q", "p", "u"};

Polynomial P(const std::string& src, std::vector<std::string> names = kQPU) {
  return parse_expr(src, VariableTable(std::move(names), {}));
}

}  // namespace

TEST(Rational, CanonicalForm) {
  const auto r = parse_rational("6/-4");
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(to_string(parse_rational("0/7")), "0");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Polynomial, Add) {
  EXPECT_TRUE(is_zero(add(P("q^2"), P("-q^2"))));
  EXPECT_EQ(add(P("u"), P("-q^2")), P("u - q^2"));
  const auto sum = add(P("p^2/2"), P("u/2"));
  EXPECT_EQ(sum.term_count(), 2u);
  EXPECT_EQ(render(sum, kQPU), "1/2*p^2 + 1/2*u");
}

TEST(Polynomial, Mul) {
  const std::vector<std::string> n4{"q", "p", "u", "v"};
  EXPECT_EQ(mul(P("2*q", n4), P("2*p", n4)), P("4*q*p", n4));
  EXPECT_TRUE(is_zero(mul(P("q"), Polynomial::constant(3, 0))));
  EXPECT_EQ(mul(P("u - q^2"), Polynomial::constant(3, 1)), P("u - q^2"));
}

TEST(Polynomial, DimensionMismatch) {
  EXPECT_THROW(add(P("q"), Polynomial::variable(4, 0)), DimensionError);
  EXPECT_THROW(mul(P("q"), Polynomial::variable(2, 0)), DimensionError);
}

TEST(Polynomial, Partial) {
  EXPECT_EQ(partial(P("u - q^2"), 0), P("-2*q"));
  EXPECT_EQ(partial(P("u - q^2"), 2), P("1"));
  VariableTable vars({"q", "p", "u"}, {});
  vars.bind("m", 1);
  EXPECT_EQ(partial(parse_expr("p^2/(2*m)", vars), 1), P("p"));
  EXPECT_THROW(partial(P("q"), 3), std::out_of_range);
}

TEST(Polynomial, Compose) {
  const std::vector<std::string> x{"q", "p", "C"};
  const std::vector<Polynomial> subs{P("q", x), P("p", x), P("C + q^2", x)};
  EXPECT_EQ(compose(P("u - q^2"), subs), P("C", x));
  const auto id = coordinates(3);
  EXPECT_EQ(compose(P("q"), id), P("q"));
  const std::vector<Polynomial> shift{P("q + 1"), P("p"), P("u")};
  EXPECT_EQ(compose(P("q^2"), shift), P("q^2 + 2*q + 1"));
  EXPECT_THROW(compose(P("q"), std::vector<Polynomial>{P("q")}), DimensionError);
}

TEST(Polynomial, ComposeChangesDimension) {
  const std::vector<Polynomial> to2{Polynomial::variable(2, 0), Polynomial::variable(2, 1),
                                    Polynomial::variable(2, 0) * Polynomial::variable(2, 1)};
  const auto r = compose(P("u - q*p"), to2);
  EXPECT_EQ(r.dimension(), 2u);
  EXPECT_TRUE(r.is_zero());
}

TEST(Polynomial, EvalRational) {
  const std::vector<Rational> a{2, 0, 4};
  EXPECT_EQ(eval_rational(P("u - q^2"), a), 0);
  const std::vector<std::string> n4{"q", "p", "u", "v"};
  const std::vector<Rational> b{1, 1, 5, 9};
  EXPECT_EQ(eval_rational(P("4*q*p", n4), b), 4);
  const std::vector<Rational> c{0, 2, 3};
  EXPECT_EQ(eval_rational(P("p^2/2 + u/2"), c), Rational(7, 2));
  EXPECT_THROW(eval_rational(P("q"), std::vector<Rational>{1}), DimensionError);
}

TEST(Polynomial, EvalDouble) {
  EXPECT_EQ(eval_double(P("u - q^2"), std::vector<double>{2.0, 0.0, 4.0}), 0.0);
  const std::vector<std::string> n4{"q", "p", "u", "v"};
  EXPECT_EQ(eval_double(P("4*q*p", n4), std::vector<double>{0.5, 0.5, 0.0, 0.0}), 1.0);
  EXPECT_EQ(eval_double(P("p"), std::vector<double>{0.0, 3.25, 0.0}), 3.25);
}

TEST(Polynomial, IsZero) {
  EXPECT_TRUE(is_zero(Polynomial::constant(3, 0)));
  EXPECT_TRUE(is_zero(P("q - q")));
  EXPECT_FALSE(is_zero(P("u - q^2")));
}

TEST(Polynomial, GrlexOrderAndRender) {
  const auto p = P("1 + q + u^3 - 2*p*q");
  EXPECT_EQ(render(p, kQPU), "u^3 - 2*q*p + q + 1");
  EXPECT_EQ(p.degree(), 3u);
  EXPECT_EQ(render(Polynomial::constant(3, 0), kQPU), "0");
  EXPECT_EQ(render(P("-q"), kQPU), "-q");
}

TEST(Polynomial, ConstantValue) {
  EXPECT_EQ(P("3/4").constant_value(), Rational(3, 4));
  EXPECT_FALSE(P("q").constant_value().has_value());
  EXPECT_EQ(Polynomial::constant(3, 0).constant_value(), Rational(0));
}

TEST(Polynomial, Pow) {
  EXPECT_EQ(P("q + p").pow(3), P("q^3 + 3*q^2*p + 3*q*p^2 + p^3"));
  EXPECT_EQ(P("q").pow(0), P("1"));
}

TEST(PolynomialProperty, RingAxioms) {
  nambu::testing::Rng rng(7);
  for (int c = 0; c < 150; ++c) {
    const auto a = nambu::testing::random_polynomial(rng, 3, 3, 4);
    const auto b = nambu::testing::random_polynomial(rng, 3, 3, 4);
    const auto d = nambu::testing::random_polynomial(rng, 3, 3, 4);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) * d, a * d + b * d);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_TRUE((a - a).is_zero());
    const auto ab = a * b;
    for (const auto& [e, coeff] : ab.terms()) EXPECT_NE(coeff, 0);
  }
}

TEST(PolynomialProperty, ProductRuleAndEvaluation) {
  nambu::testing::Rng rng(11);
  for (int c = 0; c < 150; ++c) {
    const auto a = nambu::testing::random_polynomial(rng, 3, 3, 4);
    const auto b = nambu::testing::random_polynomial(rng, 3, 3, 4);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(partial(a * b, i), partial(a, i) * b + a * partial(b, i));
    }
    const std::vector<Rational> pt{nambu::testing::random_rational(rng),
                                   nambu::testing::random_rational(rng),
                                   nambu::testing::random_rational(rng)};
    EXPECT_EQ(eval_rational(a * b, pt), eval_rational(a, pt) * eval_rational(b, pt));
  }
}

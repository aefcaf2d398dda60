#include <gtest/gtest.h>

#include "nambu/brackets.hpp"
#include "nambu/parser.hpp"
#include "nambu/system.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nambu;

namespace {

SystemSpec fixture(const std::string& name) {
  return load_system(std::string(NAMBU_FIXTURE_DIR) + "/" + name);
}

Polynomial P(const SystemSpec& s, const std::string& src) { return parse_expr(src, s.variables); }

}  // namespace

TEST(NambuBracket, Epsilon3) {
  const auto s = fixture("n3.sys");
  const BracketContext ctx(s.tensors.at("EPS"), s.variables.names());
  const std::vector<Polynomial> a{P(s, "q"), P(s, "p"), P(s, "u - q^2")};
  EXPECT_EQ(nambu_bracket(ctx, a), P(s, "1"));
  const std::vector<Polynomial> b{P(s, "p"), P(s, "u"), P(s, "u - q^2")};
  EXPECT_EQ(nambu_bracket(ctx, b), P(s, "-2*q"));
  const std::vector<Polynomial> rep{P(s, "q*p + u"), P(s, "q"), P(s, "q*p + u")};
  EXPECT_TRUE(nambu_bracket(ctx, rep).is_zero());
}

TEST(NambuBracket, Epsilon4) {
  const auto s = fixture("n4.sys");
  const std::vector<Polynomial> a{P(s, "q"), P(s, "p"), P(s, "u - q^2"), P(s, "v - p^2")};
  EXPECT_EQ(nambu_bracket(s.tensors.at("EPS4"), a), P(s, "1"));
}

TEST(NambuBracket, ArityAndDimension) {
  const auto s = fixture("n3.sys");
  const auto& eps = s.tensors.at("EPS");
  EXPECT_THROW(nambu_bracket(eps, std::vector<Polynomial>{P(s, "q"), P(s, "p")}),
               std::invalid_argument);
  const std::vector<Polynomial> wrong{Polynomial::variable(4, 0), P(s, "p"), P(s, "u")};
  EXPECT_THROW(nambu_bracket(eps, wrong), DimensionError);
  EXPECT_THROW(BracketContext(eps, {"q", "p"}), std::invalid_argument);
}

TEST(PoissonBracket, N3Matrix) {
  const auto s = fixture("n3.sys");
  const auto& j = s.matrices.at("J");
  EXPECT_EQ(poisson_bracket(j, P(s, "q"), P(s, "p")), P(s, "1"));
  EXPECT_TRUE(poisson_bracket(j, P(s, "q^2*u"), P(s, "q^2*u")).is_zero());
  EXPECT_EQ(poisson_bracket(j, P(s, "p"), P(s, "u")), P(s, "-2*q"));
}

TEST(DerivedPoisson, FixtureMatrices) {
  const auto s3 = fixture("n3.sys");
  EXPECT_EQ(derived_poisson(s3.tensors.at("EPS"), std::vector<Polynomial>{P(s3, "u - q^2")}),
            s3.matrices.at("J"));
  EXPECT_TRUE(derived_poisson(s3.tensors.at("EPS"), std::vector<Polynomial>{P(s3, "1")}).is_zero());
  EXPECT_THROW(derived_poisson(s3.tensors.at("EPS"), std::vector<Polynomial>{}),
               std::invalid_argument);

  const auto s4 = fixture("n4.sys");
  const std::vector<Polynomial> c{P(s4, "u - q^2"), P(s4, "v - p^2")};
  EXPECT_EQ(derived_poisson(s4.tensors.at("EPS4"), c), s4.matrices.at("J"));
}

TEST(DerivedPoisson, N4TriLinearBrackets) {
  const auto s = fixture("n4.sys");
  const auto& eps4 = s.tensors.at("EPS4");
  const auto c1 = s.observables.at("C1");
  const auto c2 = s.observables.at("C2");
  const auto h = s.observables.at("H");
  EXPECT_EQ(derived_poisson(s.tensors.at("L1"), std::vector<Polynomial>{c1}),
            s.matrices.at("J"));
  EXPECT_EQ(derived_poisson(s.tensors.at("L2"), std::vector<Polynomial>{c2}),
            s.matrices.at("J"));
  for (const auto& idx : increasing_tuples(4, 3)) {
    const auto z = coordinates(4);
    const std::vector<Polynomial> via_eps4{z[idx[0]], h, z[idx[1]], z[idx[2]]};
    EXPECT_EQ(s.tensors.at("LH").get(idx), nambu_bracket(eps4, via_eps4));
    const std::vector<Polynomial> l1{z[idx[0]], z[idx[1]], z[idx[2]], c2};
    EXPECT_EQ(s.tensors.at("L1").get(idx), nambu_bracket(eps4, l1));
    const std::vector<Polynomial> l2{z[idx[0]], z[idx[1]], c1, z[idx[2]]};
    EXPECT_EQ(s.tensors.at("L2").get(idx), nambu_bracket(eps4, l2));
  }
  EXPECT_EQ(derived_poisson(s.tensors.at("LH"), std::vector<Polynomial>{-c2}),
            s.matrices.at("J1"));
  EXPECT_EQ(derived_poisson(s.tensors.at("LH"), std::vector<Polynomial>{c1}),
            s.matrices.at("J2"));
}

TEST(HamiltonianField, Oscillator) {
  const auto s = fixture("n3.sys");
  const auto h = s.observables.at("H");
  const auto c = s.observables.at("C");
  const std::vector<Polynomial> expected{P(s, "p"), P(s, "-q"), P(s, "2*q*p")};
  EXPECT_EQ(hamiltonian_vector_field(s.tensors.at("EPS"), std::vector<Polynomial>{h, c}),
            expected);
  EXPECT_EQ(hamiltonian_vector_field(s.matrices.at("J"), std::vector<Polynomial>{h}), expected);
  const auto zero = hamiltonian_vector_field(s.tensors.at("EPS"),
                                             std::vector<Polynomial>{P(s, "3"), P(s, "1/2")});
  for (const auto& f : zero) EXPECT_TRUE(f.is_zero());
  EXPECT_THROW(hamiltonian_vector_field(s.tensors.at("EPS"), std::vector<Polynomial>{h}),
               std::invalid_argument);
}

TEST(Determinant, SmallMatrices) {
  const auto x = Polynomial::variable(2, 0);
  const auto y = Polynomial::variable(2, 1);
  const PolyMatrix m{{x, y}, {y, x}};
  EXPECT_EQ(determinant(m), x * x - y * y);
  const auto one = Polynomial::constant(2, 1);
  const auto zero = Polynomial::constant(2, 0);
  const PolyMatrix perm{{zero, one, zero}, {zero, zero, one}, {one, zero, zero}};
  EXPECT_EQ(determinant(perm), one);
}

TEST(BracketProperty, AgreesWithFullIndexSum) {
  nambu::testing::Rng rng(17);
  for (int c = 0; c < 120; ++c) {
    const std::size_t n = 3 + c % 2;
    const std::size_t r = 2 + c % 3 > n ? n : 2 + c % 3;
    const auto t = nambu::testing::random_tensor(rng, n, r);
    std::vector<Polynomial> args;
    for (std::size_t a = 0; a < r; ++a) args.push_back(nambu::testing::random_polynomial(rng, n, 2, 3));
    EXPECT_EQ(nambu_bracket(t, args),
              nambu::testing::dense_bracket(nambu::testing::DenseTensor(t), args));
  }
}

TEST(BracketProperty, LeibnizAndAntisymmetry) {
  nambu::testing::Rng rng(19);
  for (int c = 0; c < 120; ++c) {
    const auto t = nambu::testing::random_tensor(rng, 4, 3);
    const auto a = nambu::testing::random_polynomial(rng, 4, 2, 3);
    const auto b = nambu::testing::random_polynomial(rng, 4, 2, 3);
    const auto cc = nambu::testing::random_polynomial(rng, 4, 2, 3);
    const auto d = nambu::testing::random_polynomial(rng, 4, 2, 3);
    const std::vector<Polynomial> ab_cd{a * b, cc, d}, b_cd{b, cc, d}, a_cd{a, cc, d};
    EXPECT_EQ(nambu_bracket(t, ab_cd), a * nambu_bracket(t, b_cd) + nambu_bracket(t, a_cd) * b);
    const std::vector<Polynomial> cyc{cc, d, a};
    const std::vector<Polynomial> odd{cc, a, d};
    EXPECT_EQ(nambu_bracket(t, cyc), nambu_bracket(t, a_cd));
    EXPECT_EQ(nambu_bracket(t, odd), -nambu_bracket(t, a_cd));
  }
}

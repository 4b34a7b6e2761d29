#include "common.hpp"

using namespace ultrak2;
using namespace fixture;

TEST(ValExp, OrderingAndArithmetic) {
  EXPECT_LT(ValExp(1), ValExp(2));
  EXPECT_LT(ValExp(5), ValExp::infinity());
  EXPECT_EQ(ValExp(mpq_class(2, 4)).str(), "1/2");
  EXPECT_EQ(ValExp::parse("-3/6"), ValExp(mpq_class(-1, 2)));
  EXPECT_EQ(ValExp::parse("inf"), ValExp::infinity());
  EXPECT_EQ(ValExp(1) + ValExp::infinity(), ValExp::infinity());
  // |x| <= |y| iff v(x) >= v(y)
  EXPECT_TRUE(abs_le(ValExp(3), ValExp(1)));
  EXPECT_EQ(abs_max(ValExp(3), ValExp(1)), ValExp(1));
  EXPECT_CODE(ValExp::parse("1/x"), "SyntaxError");
}

TEST(Padic, SpecArithmetic) {
  EXPECT_EQ(q5(7, 2) + q5(3, 2), q5(5));
  EXPECT_CODE(q5(0).inv(), "DivisionByZero");
  EXPECT_EQ(q5(50).valuation(), ValExp(2));
  EXPECT_EQ(q5(0).valuation(), ValExp::infinity());
  EXPECT_EQ(Q5().residue(q5(7, 2)), 1u);
  EXPECT_CODE(Q5().residue(q5(1, 5)), "NotIntegral");
  EXPECT_EQ(q5(3, 25).valuation(), ValExp(-2));
}

TEST(Fqt, SpecArithmetic) {
  const auto& K = F3();
  auto t = K.t();
  // coefficients mod 3: t^2 + 3t + 2 = t^2 + 2
  EXPECT_EQ((t + K.one()) * (t + K.from_int(2)), pow(t, 2) + K.from_int(2));
  EXPECT_EQ(K.format((t + K.one()) * (t + K.from_int(2))), "(t^2+2)/(1)");
  EXPECT_EQ(((pow(t, 2) + K.one()) / t).valuation(), ValExp(-1));
  EXPECT_EQ(K.residue((t + K.one()) / t), 1u);
  EXPECT_EQ(K.uniformizer().valuation(), ValExp(1));
  EXPECT_CODE(K.residue(t), "NotIntegral");
}

TEST(Fields, Descriptors) {
  EXPECT_EQ(std::get<const PadicField*>(parse_field("padic:5")), &Q5());
  EXPECT_EQ(std::get<const FqtField*>(parse_field("fqt_inf:3")), &F3());
  EXPECT_CODE(parse_field("padic:6"), "BadField");
  EXPECT_CODE(parse_field("real:2"), "SyntaxError");
  EXPECT_EQ(FqtField::get(4).residue_field().order(), 4u);
}

TEST(Fields, RootsOfUnity) {
  // elements are exact rationals: only +-1 are roots of unity
  EXPECT_EQ(Q5().roots_of_unity(4).size(), 2u);
  EXPECT_EQ(Q5().roots_of_unity(3).size(), 1u);
  EXPECT_EQ(F3().roots_of_unity(2).size(), 2u);
  EXPECT_EQ(*Q5().nth_root(q5(4, 9), 2) * *Q5().nth_root(q5(4, 9), 2), q5(4, 9));
  EXPECT_FALSE(Q5().nth_root(q5(2), 2).has_value());
}

// field axioms, multiplicativity of |.|, the strong triangle inequality and
// wire round-trip on random elements of both fields
template <class F>
void field_properties(const F& K, std::uint64_t seed) {
  Rng g(seed);
  for (int i = 0; i < 300; ++i) {
    auto a = rand_nonzero(K, g, -3, 3), b = rand_nonzero(K, g, -3, 3), c = rand_nonzero(K, g, -3, 3);
    ASSERT_EQ((a + b) * c, a * c + b * c);
    ASSERT_EQ(a * a.inv(), K.one());
    ASSERT_EQ((a - b) + b, a);
    ASSERT_EQ((a * b).valuation(), a.valuation() + b.valuation());
    ASSERT_GE((a + b).valuation(), std::min(a.valuation(), b.valuation()));
    if (a.valuation() != b.valuation()) {
      ASSERT_EQ((a + b).valuation(), std::min(a.valuation(), b.valuation()));
    }
    ASSERT_EQ(K.parse(K.format(a)), a);
    if (a.valuation() >= ValExp(0) && b.valuation() >= ValExp(0)) {
      ASSERT_EQ(K.residue(a * b), K.residue_field().mul(K.residue(a), K.residue(b)));
    }
  }
}

TEST(Fields, PadicProperties) { field_properties(Q5(), 1); }
TEST(Fields, FqtProperties) { field_properties(F3(), 2); }
TEST(Fields, Fqt4Properties) { field_properties(FqtField::get(4), 3); }

TEST(Galois, PrimePowerField) {
  const auto& G = GaloisField::get(4);
  for (GaloisField::elem a = 1; a < 4; ++a) EXPECT_EQ(G.mul(a, G.inv(a)), 1u);
  for (GaloisField::elem a = 0; a < 4; ++a) EXPECT_EQ(G.add(a, a), 0u);
  EXPECT_EQ(G.pow(2, 3), 1u);
}

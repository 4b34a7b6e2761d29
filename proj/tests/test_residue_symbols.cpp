#include "common.hpp"

using namespace ultrak2;
using namespace fixture;
using RF = RationalFunction<PadicField>;
using K2 = K2Element<PadicField>;

namespace {
FqPoly tpoly(const GaloisField& G, std::vector<GaloisField::elem> c) { return FqPoly(G, std::move(c)); }
}  // namespace

TEST(UnitDecompose, Examples) {
  const auto& G = Q5().residue_field();
  auto d = unit_decompose(fn(Q5(), "5*z"), {0});
  EXPECT_EQ(d.c, q5(5));
  EXPECT_EQ(d.unit, RF::z(Q5()));
  EXPECT_EQ(d.S, (ResidueSet{0}));
  // z^2 - 5 is not split over Q; its reduction is t^2
  Poly<PadicField> P(Q5(), {q5(-5), q5(0), q5(1)});
  EXPECT_EQ(detail::reduce(P), tpoly(G, {0, 0, 1}));
  auto one = unit_decompose(RF::one(Q5()), {2});
  EXPECT_EQ(one.c, q5(1));
  EXPECT_EQ(one.S, (ResidueSet{2}));
  EXPECT_EQ(mero_abs(fn(Q5(), "5*z"), {0}), ValExp(1));
  EXPECT_EQ(mero_abs(fn(Q5(), "(z-5)*(z+5)"), {0}), ValExp(0));
  EXPECT_EQ(mero_abs(fn(Q5(), "5*z*(z-5)*(z+5)"), {0}), ValExp(1));
  // a root with a new residue enlarges S
  EXPECT_EQ(unit_decompose(fn(Q5(), "(z-2)"), {0}).S, (ResidueSet{0, 2}));
}

TEST(Gts, Examples) {
  const auto& G = Q5().residue_field();
  auto z = RF::z(Q5());
  auto T = gts(RF::constant_fn(q5(5)), z, {0});
  EXPECT_EQ(T, GTSValue::power(tpoly(G, {0, 1}), tpoly(G, {1}), -1));
  EXPECT_EQ(gts_at(T, 0, {0}), -1);
  EXPECT_TRUE(gts(z, z, {0}).is_neutral());
  EXPECT_EQ(gts(fn(Q5(), "5*z"), RF::constant_fn(q5(5)), {0}), GTSValue::power(tpoly(G, {0, 1}), tpoly(G, {1}), 1));
  EXPECT_TRUE(GTSValue().is_neutral());
  EXPECT_EQ(gts_at(GTSValue(), 0, {0}), 0);
  // (t^2 + 1)/t to the power 2 over F_5
  auto U = GTSValue::power(tpoly(G, {1, 0, 1}), tpoly(G, {0, 1}), 2);
  EXPECT_EQ(gts_at(U, 0, {0}), -2);
  EXPECT_CODE(gts_at(U, 3, {0}), "PointNotInS");
}

TEST(Gts, WireForm) {
  const auto& G = Q5().residue_field();
  auto T = GTSValue::power(tpoly(G, {1, 0, 1}), tpoly(G, {0, 1}), mpq_class(1, 2));
  // bases are kept coprime, not factored: t^2 + 1 and t
  ASSERT_EQ(T.terms().size(), 2u);
  EXPECT_EQ(T.terms()[0].first.str(), "t");
  EXPECT_EQ(T.terms()[0].second, mpq_class(-1, 2));
  EXPECT_EQ(T * T.inv(), GTSValue());
  EXPECT_EQ(T.scaled(2), T * T);
}

TEST(GtsCheck, Examples) {
  auto z = RF::z(Q5());
  auto five = RF::constant_fn(q5(5));
  auto a = gts_check(K2::symbol(five, z), 0, {0}, Q5());
  EXPECT_EQ(a.reg_valuation, 1);
  EXPECT_EQ(a.t_s, -1);
  EXPECT_TRUE(a.pass);
  auto b = gts_check(K2::symbol(z, z), 0, {0}, Q5());
  EXPECT_EQ(b.reg_valuation, 0);
  EXPECT_EQ(b.t_s, 0);
  auto c = gts_check(K2::symbol(fn(Q5(), "5*z"), five), 0, {0}, Q5());
  EXPECT_EQ(c.reg_valuation, -1);
  EXPECT_EQ(c.t_s, 1);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(gts_orientation, -1);
}

// nu({k}_{D(s,1)}) = -T_s(k) on random split elements, stable under
// rescaling the valuation
template <class F>
void gts_property(const F& K, std::uint64_t seed) {
  Rng g(seed);
  const auto q = static_cast<long>(K.residue_field().order());
  for (int i = 0; i < 60; ++i) {
    auto k = K2Element<F>::symbol(rand_split_function(K, g, 3), rand_split_function(K, g, 3), uniform(g, 1, 2));
    auto s = static_cast<GaloisField::elem>(uniform(g, 0, q - 1));
    auto r = gts_check(k, s, {}, K);
    ASSERT_TRUE(r.pass) << r.reg_valuation << " vs " << r.t_s;
    auto r2 = gts_check(k, s, {}, K, 2);
    ASSERT_EQ(r2.reg_valuation, 2 * r.reg_valuation);
    ASSERT_EQ(r2.t_s, 2 * r.t_s);
  }
}
TEST(GtsCheck, PadicProperties) { gts_property(Q5(), 81); }
TEST(GtsCheck, FqtProperties) { gts_property(F3(), 82); }

#include "common.hpp"

using namespace ultrak2;
using namespace fixture;
using RF = RationalFunction<PadicField>;
using K2 = K2Element<PadicField>;
using D5 = Disk<PadicField>;
using U5 = Subdomain<PadicField>;

namespace {
D5 unit() { return D5::finite(q5(0), ValExp(0)); }
D5 outer() { return D5::at_infinity(Q5(), ValExp(0)); }
}  // namespace

TEST(K2, Membership) {
  auto A = unit_annulus();
  auto f = fn(Q5(), "5*(z-1/5)^-1");  // f and 1 - f invertible on A
  auto one_minus = fn(Q5(), "(z-26/5)*(z-1/5)^-1");
  EXPECT_TRUE(is_in_K2(K2::symbol(f, one_minus), A));
  // z x z has symbol -1 at 0 inside the closed unit disk
  U5 closed_disk(Q5(), {outer()});
  auto z = RF::z(Q5());
  EXPECT_FALSE(is_in_K2(K2::symbol(z, z), closed_disk));
  auto g = fn(Q5(), "(z-3)*(z-7/5)");
  EXPECT_TRUE(is_in_K2(K2::symbol(g, z) + K2::symbol(z, g), closed_disk));
  // char 2: -1 = 1
  auto K4 = FqtField::get(4);
  auto z4 = RationalFunction<FqtField>::z(K4);
  EXPECT_TRUE(is_in_K2(K2Element<FqtField>::symbol(z4, z4), Subdomain<FqtField>(K4, {Disk<FqtField>::at_infinity(K4, ValExp(0))})));
}

TEST(K2, Regulator) {
  auto A = unit_annulus();
  auto z = RF::z(Q5()), z5 = RF::linear(q5(5));
  EXPECT_EQ(regulator_k2(K2::symbol(z, z5), A, unit()), q5(-1));
  EXPECT_EQ(regulator_k2(K2::symbol(fn(Q5(), "(z-1/5)"), fn(Q5(), "(z-1/25)")), A, unit()), q5(1));
  auto k = K2::symbol(z, z5);
  EXPECT_EQ(regulator_k2(k - k, A, unit()), q5(1));
}

TEST(K2, RegulatorClass) {
  auto A = unit_annulus();
  auto z = RF::z(Q5()), z5 = RF::linear(q5(5));
  EXPECT_EQ(regulator_class(K2::symbol(z, z5), A, h1_class({0, 0}, A)), q5(1));
  EXPECT_EQ(regulator_class(K2::symbol(z, z5) + K2::symbol(z5, z), A, h1_class({1, 0}, A)), q5(1));
  // D(0,1) and -D(inf,1) are the same class
  auto k = K2::symbol(fn(Q5(), "(z-5)*(z-1/5)^-1"), fn(Q5(), "(z-25)*(z-1/25)^-1"));
  EXPECT_EQ(regulator_class(k, A, h1_class({1, 0}, A)), regulator_class(k, A, h1_class({0, -1}, A)));
  EXPECT_EQ(regulator_class(k, A, h1_class({1, 0}, A)), regulator_k2(k, A, unit()));
  EXPECT_CODE(regulator_class(K2::symbol(z, z), U5(Q5(), {outer()}), h1_class({0}, U5(Q5(), {outer()}))), "NotInK2");
}

TEST(K2, InvarianceExamples) {
  auto A = unit_annulus();
  auto f = fn(Q5(), "(z-25)*(z-1/25)^-1"), g = fn(Q5(), "(z-100)*(z-4/25)^-1");
  auto k = K2::symbol(f, g);
  auto c = h1_class({1, 0}, A);
  auto sq = RationalMap<PadicField>::power(Q5(), 2);
  auto rep = invariance_check(sq, A, A, k, c);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.image, 2 * c);
  // right side by hand: the symbol on D(0,1) squared
  EXPECT_EQ(rep.pushed, pow(regulator(f, g, A, unit()), 2));
  auto M = RationalMap<PadicField>::mobius(Matrix2<PadicField>::inversion(Q5()));
  EXPECT_TRUE(invariance_check(M, A, A, k, c).pass);
  auto id = RationalMap<PadicField>::mobius(Matrix2<PadicField>::identity(Q5()));
  auto rid = invariance_check(id, A, A, k, c);
  EXPECT_EQ(rid.pulled, rid.pushed);
  EXPECT_EQ(rid.image, c);
}

// boundary product is trivial, and the regulator is independent of the
// shrink margin used to isolate support points in U
template <class F>
void k2_property(const F& K, std::uint64_t seed) {
  Rng g(seed);
  for (int i = 0; i < 60; ++i) {
    auto U = rand_subdomain(K, g, 4);
    auto k = K2Element<F>::symbol(rand_invertible(U, g), rand_invertible(U, g)) + rand_steinberg(K, g);
    ASSERT_TRUE(is_in_K2(k, U));
    Elem<F> prod = K.one();
    for (auto& D : U.boundary()) {
      auto v = regulator_k2(k, U, D);
      ASSERT_EQ(v, regulator_k2(k, U, D, 3));
      prod *= v;
    }
    ASSERT_EQ(prod, K.one());
  }
}
TEST(K2, PadicProperties) { k2_property(Q5(), 71); }
TEST(K2, FqtProperties) { k2_property(F3(), 72); }

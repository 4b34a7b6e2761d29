#include "common.hpp"

using namespace ultrak2;
using namespace fixture;
using RF = RationalFunction<PadicField>;
using PP = ProjPoint<PadicField>;
using D5 = Disk<PadicField>;

namespace {
D5 unit() { return D5::finite(q5(0), ValExp(0)); }
D5 outer() { return D5::at_infinity(Q5(), ValExp(0)); }
}  // namespace

TEST(TameSymbol, Examples) {
  auto z = RF::z(Q5());
  EXPECT_EQ(tame_symbol(z, RF::linear(q5(1)), PP(q5(0))), q5(-1));
  auto f = RF::linear(q5(3));
  EXPECT_EQ(tame_symbol(f, f, PP(q5(3))), q5(-1));
  EXPECT_EQ(tame_symbol(RF::constant_fn(q5(7)), f, PP::infinity()), q5(1, 7));
  EXPECT_EQ(tame_symbol(z, z, PP(q5(2))), q5(1));
}

TEST(Weil, Examples) {
  auto z = RF::z(Q5());
  EXPECT_EQ(weil_product(z, RF::linear(q5(1))), q5(1));
  EXPECT_EQ(weil_product(RF::linear(q5(4)), RF::linear(q5(4))), q5(1));
  EXPECT_EQ(weil_product(fn(Q5(), "3*(z-1)^2*(z-5)^-1"), fn(Q5(), "(z-2)*(z-7)^-1")), q5(1));
}

// the product over all points, computed by hand from the six symbols
TEST(Weil, HandProduct) {
  auto f = fn(Q5(), "3*(z-1)^2*(z-5)^-1"), g = fn(Q5(), "(z-2)*(z-7)^-1");
  PadicNumber prod = q5(1);
  for (long x : {1, 5, 2, 7}) prod *= tame_symbol(f, g, PP(q5(x)));
  prod *= tame_symbol(f, g, PP::infinity());
  // at 1: 1/g(1)^2 = (1/6)^-2 ... spelled out
  EXPECT_EQ(tame_symbol(f, g, PP(q5(1))), pow(q5(-1, -6), -2));
  EXPECT_EQ(prod, q5(1));
}

template <class F>
void weil_property(const F& K, std::uint64_t seed) {
  Rng g(seed);
  for (int i = 0; i < 300; ++i) {
    auto f = rand_split_function(K, g, 4), h = rand_split_function(K, g, 4);
    ASSERT_EQ(weil_product(f, h), K.one());
    ASSERT_EQ(weil_product(f * h, f), K.one());
  }
}
TEST(Weil, PadicRandom) { weil_property(Q5(), 41); }
TEST(Weil, FqtRandom) { weil_property(F3(), 42); }
TEST(Weil, Fqt4Random) { weil_property(FqtField::get(4), 43); }

TEST(Regulator, Examples) {
  auto A = unit_annulus();
  auto z = RF::z(Q5());
  EXPECT_EQ(regulator(z, RF::linear(q5(5)), A, unit()), q5(-1));
  EXPECT_EQ(regulator(fn(Q5(), "(z-1/5)"), fn(Q5(), "(z-1/25)"), A, unit()), q5(1));
  EXPECT_EQ(regulator(RF::constant_fn(q5(2)), z, A, unit()), q5(2));
  EXPECT_CODE(regulator(fn(Q5(), "(z-2)"), z, A, unit()), "FunctionNotInvertibleOnU");
  EXPECT_CODE(regulator(z, z, A, D5::finite(q5(1), ValExp(0))), "NotABoundaryComponent");
}

TEST(Regulator, BoundCheck) {
  auto A = unit_annulus();
  auto f = fn(Q5(), "(z-5)*z^-1"), z = RF::z(Q5());
  auto w = regulator_bound_check(f, z, A, unit(), ValExp(1));
  // symbols at 0 and 5: 5 and 1/5
  EXPECT_EQ(tame_symbol(f, z, PP(q5(0))) * tame_symbol(f, z, PP(q5(5))), q5(1));
  EXPECT_EQ(w.value, q5(1));
  EXPECT_GE(w.distance, ValExp(1));
  EXPECT_EQ(regulator_bound_check(RF::one(Q5()), z, A, outer(), ValExp(30)).value, q5(1));
  EXPECT_CODE(regulator_bound_check(z, f, A, unit(), ValExp(1)), "PreconditionFailed");
}

TEST(Factorize, Examples) {
  auto A = unit_annulus();
  auto f = fn(Q5(), "(z-5)*z^-1");
  auto fac = factorize(f, A, ValExp(1));
  EXPECT_EQ(fac.constant, q5(1));
  EXPECT_EQ(fac.parts[0], f);
  EXPECT_EQ(fac.parts[1], RF::one(Q5()));
  auto one = factorize(RF::one(Q5()), A, ValExp(1));
  EXPECT_EQ(one.parts[0], RF::one(Q5()));
  // zeros and poles on both sides
  auto h = fn(Q5(), "1/5*(z-5)*(z-1/5)*z^-1*(z-1/25)^-1");
  auto split = factorize(h, A, ValExp(1));
  EXPECT_EQ(split.parts[0] * split.parts[1] * RF::constant_fn(split.constant), h);
  EXPECT_EQ(split.parts[0].divisor().size(), 2u);
  EXPECT_EQ(split.parts[1].divisor().size(), 2u);
}

// axioms on random instances: bilinearity, antisymmetry, reassembly and
// the U_eps bound, parts in R_eps of the complement of their disk
template <class F>
void regulator_property(const F& K, std::uint64_t seed) {
  using R = RationalFunction<F>;
  Rng g(seed);
  for (int i = 0; i < 80; ++i) {
    auto U = rand_subdomain(K, g, 4);
    const auto& D = U[uniform(g, 0, static_cast<int>(U.size()) - 1)];
    auto f1 = rand_invertible(U, g, 3), f2 = rand_invertible(U, g, 3), h = rand_invertible(U, g, 3);
    ASSERT_EQ(regulator(f1 * f2, h, U, D), regulator(f1, h, U, D) * regulator(f2, h, U, D));
    ASSERT_EQ(regulator(f1, h, U, D) * regulator(h, f1, U, D), K.one());
    ValExp eps(uniform(g, 1, 3));
    auto e = rand_near_one(U, eps, g);
    auto w = regulator_bound_check(e, h, U, D, eps);
    ASSERT_GE(w.distance, eps);
    auto fac = factorize(e, U, eps);
    R prod = R::constant_fn(fac.constant);
    for (std::size_t k = 0; k < U.size(); ++k) {
      prod = prod * fac.parts[k];
      ASSERT_TRUE(in_R_eps(fac.parts[k], Subdomain<F>(K, {U[k]}), eps));
    }
    ASSERT_EQ(prod, e);
  }
}
TEST(Regulator, PadicProperties) { regulator_property(Q5(), 51); }
TEST(Regulator, FqtProperties) { regulator_property(F3(), 52); }

// {f, f}_D = (-1)^deg(f)(D), the sign identity behind the e_A x e_A case
template <class F>
void self_symbol_property(const F& K, std::uint64_t seed) {
  Rng g(seed);
  for (int i = 0; i < 60; ++i) {
    auto U = rand_subdomain(K, g, 4);
    const auto& D = U[uniform(g, 0, static_cast<int>(U.size()) - 1)];
    auto f = rand_invertible(U, g, 4);
    Elem<F> sign = deg_boundary(f, U, D) % 2 ? -K.one() : K.one();
    ASSERT_EQ(regulator(f, f, U, D), sign);
  }
}
TEST(Regulator, SelfSymbolSignPadic) { self_symbol_property(Q5(), 53); }
TEST(Regulator, SelfSymbolSignFqt) { self_symbol_property(F3(), 54); }

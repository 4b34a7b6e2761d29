#include "common.hpp"

using namespace ultrak2;
using namespace fixture;
using RF = RationalFunction<PadicField>;
using D5 = Disk<PadicField>;
using U5 = Subdomain<PadicField>;

namespace {
D5 unit() { return D5::finite(q5(0), ValExp(0)); }
D5 outer() { return D5::at_infinity(Q5(), ValExp(0)); }
}  // namespace

TEST(Degree, Examples) {
  auto A = unit_annulus();
  EXPECT_EQ(deg_boundary(fn(Q5(), "z*(z-5)^-1"), A, unit()), 0);
  EXPECT_EQ(deg_boundary(fn(Q5(), "(z-5)"), A, unit()), 1);
  EXPECT_EQ(deg_boundary(fn(Q5(), "(z-5)"), A, outer()), -1);
  EXPECT_EQ(deg_via_symbol(fn(Q5(), "(z-5)"), A, outer()), -1);
  EXPECT_CODE(deg_boundary(fn(Q5(), "(z-2)"), A, unit()), "FunctionNotInvertibleOnU");
}

TEST(H1, Canonical) {
  U5 three(Q5(), {unit(), D5::finite(q5(1), ValExp(0)), outer()});
  EXPECT_EQ(h1_class({2, 1, 1}, three).coeffs(), (std::vector<long>{0, -1, -1}));
  EXPECT_TRUE(h1_class({1, 1, 1}, three).is_zero());
  EXPECT_EQ(h1_class({1, 0}, unit_annulus()).coeffs(), (std::vector<long>{0, -1}));
  EXPECT_CODE(h1_class({1, 0}, three), "IndexMismatch");
  EXPECT_EQ(H1Class::generator(3, 1) + H1Class::generator(3, 2), h1_class({0, 1, 1}, three));
}

TEST(Pairing, Examples) {
  auto A = unit_annulus();
  EXPECT_EQ(pairing(fn(Q5(), "(z-5)"), h1_class({1, 0}, A), A), 1);
  EXPECT_EQ(pairing(fn(Q5(), "(z-5)"), h1_class({0, 0}, A), A), 0);
  auto f = fn(Q5(), "(z-5)*(z-1/5)^-1");
  EXPECT_EQ(pairing(f, h1_class({1, 0}, A), A), 1);
  EXPECT_EQ(pairing(f, h1_class({0, 1}, A), A), -1);
  EXPECT_EQ(pairing(f, h1_class({1, -1}, A), A), 2);
}

TEST(Pushforward, Examples) {
  auto A = unit_annulus();
  auto sq = RationalMap<PadicField>::power(Q5(), 2).as_polyfrac();
  EXPECT_EQ(h1_pushforward(sq, A, A, h1_class({1, 0}, A)), 2 * h1_class({1, 0}, A));
  // z -> 1/z swaps the two holes
  auto inv = RationalMap<PadicField>::mobius(Matrix2<PadicField>::inversion(Q5())).as_polyfrac();
  EXPECT_EQ(h1_pushforward(inv, A, A, h1_class({1, 0}, A)), h1_class({0, 1}, A));
  auto cst = RF::constant_fn(q5(3)).expanded();
  EXPECT_TRUE(h1_pushforward(cst, A, A, h1_class({1, 0}, A), false).is_zero());
}

// counting degrees agrees with the log formula, the dual family is dual to
// the generators, and pairing is additive in f
template <class F>
void homology_property(const F& K, std::uint64_t seed) {
  Rng g(seed);
  for (int i = 0; i < 100; ++i) {
    auto U = rand_subdomain(K, g, 5);
    auto f = rand_invertible(U, g, 4), h = rand_invertible(U, g, 4);
    long total = 0;
    for (auto& D : U.boundary()) {
      ASSERT_EQ(deg_boundary(f, U, D), deg_via_symbol(f, U, D));
      total += deg_boundary(f, U, D);
    }
    ASSERT_EQ(total, 0);
    auto fam = dual_family(U);
    ASSERT_EQ(fam.size() + 1, std::max<std::size_t>(U.size(), 1));
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = 0; b < fam.size(); ++b)
        ASSERT_EQ(pairing(fam[a], H1Class::generator(U.size(), b), U), a == b ? 1 : 0);
    auto c = h1_class(std::vector<long>(U.size(), uniform(g, -2, 2)), U);
    ASSERT_EQ(pairing(f * h, c, U), pairing(f, c, U) + pairing(h, c, U));
  }
}
TEST(Homology, PadicProperties) { homology_property(Q5(), 61); }
TEST(Homology, FqtProperties) { homology_property(F3(), 62); }

#include "common.hpp"

using namespace ultrak2;
using namespace fixture;
using RF = RationalFunction<PadicField>;
using Theta = ThetaQuotient<PadicField>;

namespace {
const PadicNumber& period() {
  static const PadicNumber t = q5(1, 5);
  return t;
}
Theta quotient(std::vector<long> num, std::vector<long> den) {
  Theta q{{}, {}, period()};
  for (long a : num) q.num.push_back(q5(a));
  for (long b : den) q.den.push_back(q5(b));
  return q;
}
}  // namespace

TEST(Approx, ConstantSequences) {
  auto A = unit_annulus();
  auto f = ApproxFunction<PadicField>::constant(fn(Q5(), "(z-5)"));
  auto g = ApproxFunction<PadicField>::constant(RF::z(Q5()));
  auto v = regulator_approx(f, g, A, A[0], ValExp(7));
  EXPECT_EQ(v.value, regulator(fn(Q5(), "(z-5)"), RF::z(Q5()), A, A[0]));
  EXPECT_EQ(v.rel_err, ValExp(7));
  EXPECT_EQ(v.index, 0);
}

TEST(Theta, TruncationsConverge) {
  auto A = Subdomain<PadicField>::annulus(Q5(), ValExp(0), period().valuation());
  ValuationWindow w{period().valuation(), ValExp(0)};
  for (long a : {2, 3, 7}) {
    for (int N : {2, 5, 8}) {
      auto lo = theta_truncation<PadicField>(q5(a), period(), N), hi = theta_truncation<PadicField>(q5(a), period(), N + 5);
      EXPECT_GE(ratio_distance(lo, hi, A), theta_tail<PadicField>(q5(a), period(), N, w)) << a << " " << N;
    }
  }
  EXPECT_CODE(theta_truncation<PadicField>(q5(2), q5(5), 3), "BadPeriod");
}

TEST(Theta, EqualMultisetsCancel) {
  auto q = quotient({2, 3}, {3, 2});
  EXPECT_EQ(q.truncation(6), RF::one(Q5()));
  EXPECT_TRUE(q.periodic());
  EXPECT_FALSE(quotient({2, 3}, {1, 7}).periodic());
}

// u(tz)/u(z) is close to 1 for a periodic quotient
TEST(Theta, PeriodicityResidual) {
  auto u = quotient({2, 3}, {1, 6});
  auto A = Subdomain<PadicField>::annulus(Q5(), ValExp(0), ValExp(0));
  ValuationWindow w{period().valuation(), ValExp(0)};
  for (int N : {6, 10}) {
    auto f = u.truncation(N);
    auto shifted = f.compose_mobius(Matrix2<PadicField>::scaling(period()));
    EXPECT_GE(ratio_distance(shifted, f, A), u.tail(N, w) + period().valuation()) << N;
  }
}

// regulators from two truncation stages differ by at most the coarser certificate
TEST(Approx, StagesAgree) {
  auto f = quotient({2, 3}, {1, 6}), g = quotient({4, 7}, {2, 14});
  ValuationWindow w{period().valuation(), ValExp(0)};
  auto A = Subdomain<PadicField>::annulus(Q5(), ValExp(0), period().valuation());
  auto lo = regulator_approx(f.approx(w), g.approx(w), A, A[0], ValExp(3));
  auto hi = regulator_approx(f.approx(w), g.approx(w), A, A[0], ValExp(6));
  EXPECT_LT(lo.index, hi.index);
  EXPECT_GE((q5(1) - lo.value / hi.value).valuation(), ValExp(3));
  EXPECT_CODE(regulator_approx(f.approx(w, 2), g.approx(w, 2), A, A[0], ValExp(40)), "PrecisionUnreachable");
}

TEST(Tate, Reciprocity) {
  auto f = quotient({2, 3}, {1, 6}), g = quotient({4, 7}, {2, 14});
  auto r = tate_reciprocity_check(f, g, 20, ValExp(10));
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.residual, ValExp(10));
  auto s = tate_reciprocity_check(g, f, 20, ValExp(10));
  EXPECT_EQ(s.product, r.product.inv());
  EXPECT_EQ(s.residual, r.residual);
  auto one = tate_reciprocity_check(quotient({}, {}), quotient({}, {}), 20, ValExp(10));
  EXPECT_EQ(one.product, q5(1));
  EXPECT_CODE(tate_reciprocity_check(quotient({2}, {3}), g, 20, ValExp(10)), "NotPeriodic");
  EXPECT_CODE(tate_reciprocity_check(f, g, 2, ValExp(10)), "PrecisionUnreachable");
}

TEST(Carlitz, Truncation) {
  const auto& K = FqtField::get(2);
  auto t = K.t();
  using R2 = RationalFunction<FqtField>;
  // z (1 - z)(1 - z/t)(1 - z/(t+1))
  auto want = R2::z(K) * R2::linear(K.one()).scaled(-K.one()) * R2::linear(t).scaled(-t.inv()) *
              R2::linear(t + K.one()).scaled(-(t + K.one()).inv());
  EXPECT_EQ(carlitz_truncation(K, 1), want);
  for (int N : {1, 2}) {
    auto e = carlitz_truncation(K, N);
    for (auto& P : K.polys_up_to_degree(N)) EXPECT_GT(e.ord(ProjPoint<FqtField>(K.make(P))), 0);
  }
}

// each truncation is a product over an F_q-subspace, hence an additive
// polynomial: the additivity residual vanishes exactly at every N
TEST(Carlitz, AdditivityResidual) {
  const auto& K = FqtField::get(2);
  Rng g(91);
  for (int N : {1, 2, 3}) {
    auto e = carlitz_truncation(K, N).expanded();
    for (int i = 0; i < 10; ++i) {
      auto z1 = rand_digits(K, g, -1, 3), z2 = rand_digits(K, g, -1, 3);
      EXPECT_EQ((e.eval(z1 + z2) - e.eval(z1) - e.eval(z2)).valuation(), ValExp::infinity()) << N;
    }
  }
}

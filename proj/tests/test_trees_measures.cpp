#include "common.hpp"

using namespace ultrak2;
using namespace fixture;
using K2 = K2Element<PadicField>;
using D5 = Disk<PadicField>;

namespace {
// a K2 element of P^1 minus Z_2: all symbols outside Z_2 are trivial
K2 integral_k2() { return K2::symbol(fn(Q2(), "(z-2)*(z-1)^-1"), fn(Q2(), "(z-3)*(z-1)^-1")); }
}  // namespace

TEST(Harmonic, Basics) {
  OrientedGraph G;
  int c = G.add_vertex();
  std::vector<int> out;
  for (int i = 0; i < 3; ++i) out.push_back(G.add_edge(c, G.add_vertex()));
  Cochain<long> zero, up;
  for (std::size_t e = 0; e < G.edge_count(); ++e) zero[static_cast<int>(e)] = 0;
  for (int e : out) up[e] = 1, up[G.edge(e).bar] = -1;
  EXPECT_TRUE(harmonic_check(G, zero, 0L, std::plus<>{}));
  EXPECT_FALSE(harmonic_check(G, up, 0L, std::plus<>{}));
  // flows summing to zero at the centre still fail at the leaves
  Cochain<long> mixed = up;
  mixed[out[2]] = -2, mixed[G.edge(out[2]).bar] = 2;
  EXPECT_FALSE(harmonic_check(G, mixed, 0L, std::plus<>{}));
  EXPECT_TRUE(harmonic_check(G, mixed, 0L, std::plus<>{}, true));
  EXPECT_TRUE(G.well_formed());
}

TEST(Tree, Addresses) {
  StandardTree T(3, 3);
  EXPECT_EQ(T.leaves().size(), 27u);
  EXPECT_EQ(T.graph().edge_count(), 2u * (1 + 3 + 9 + 27));
  for (std::size_t v = 0; v < T.graph().vertex_count(); ++v)
    EXPECT_EQ(T.vertex_at(T.address(static_cast<int>(v))), static_cast<int>(v));
  EXPECT_EQ(T.address(T.vertex_at("12")), "12");
  EXPECT_EQ(T.cell(T.vertex_at("12")).rep, 1 + 2 * 3);
  EXPECT_CODE(T.vertex_at("3"), "BadAddress");
  EXPECT_CODE(T.vertex_at("0000"), "BadAddress");
}

TEST(Measure, RegulatorMeasureExamples) {
  auto k = K2::symbol(RationalFunction<PadicField>::z(Q5()), fn(Q5(), "(z-5)"));
  EXPECT_EQ(regulator_measure(k, D5::finite(q5(0), ValExp(0))), q5(-1));
  EXPECT_EQ(regulator_measure(k, D5::finite(q5(2), ValExp(0))), q5(1));
  // the symbol at infinity is -1, so k is no measure on Z_5; the leaf
  // product is its inverse by reciprocity
  PadicNumber total = q5(1);
  for (long r = 0; r < 5; ++r) total *= regulator_measure(k, D5::finite(q5(r), ValExp(0)));
  EXPECT_EQ(total * tame_symbol(k, ProjPoint<PadicField>::infinity(), Q5()), q5(1));
  EXPECT_CODE(measure_from_k2(k, Q5(), 1), "NotInK2");
  EXPECT_EQ(measure_from_k2(integral_k2(), Q2(), 1).total(), Q2().one());
  EXPECT_CODE(measure_from_k2(K2::symbol(fn(Q5(), "(z-1/5)"), fn(Q5(), "z")), Q5(), 2), "SupportNotInK");
}

TEST(Measure, CochainExample) {
  auto k = K2::symbol(RationalFunction<PadicField>::z(Q5()), fn(Q5(), "(z-5)"));
  StandardTree T(5, 2);
  std::vector<PadicNumber> leaves(25, q5(1));
  for (int v : T.leaves()) leaves[T.cell(v).rep] = regulator_measure(k, T.disk(Q5(), v));
  auto c = cochain_from_measure(T, EndsMeasure<PadicNumber>(5, 2, leaves, q5(1)));
  int e = -1;
  for (int x : T.graph().out_edges(T.root()))
    if (T.graph().edge(x).t == T.vertex_at("0")) e = x;
  ASSERT_GE(e, 0);
  EXPECT_EQ(c.at(e), q5(-1));
  {
    std::vector<PadicNumber> ones(25, q5(1));
    auto cn = cochain_from_measure(T, EndsMeasure<PadicNumber>(5, 2, ones, q5(1)));
    for (auto& [edge, v] : cn) EXPECT_EQ(v, q5(1));
  }
}

TEST(Measure, HarmonicAndDepthStable) {
  auto k = integral_k2();
  for (int d : {2, 3, 4}) {
    StandardTree T(2, d);
    auto mu = measure_from_k2(k, Q2(), d);
    auto c = cochain_from_measure(T, mu);
    EXPECT_TRUE(harmonic_check(T.graph(), c, Q2().one(), std::multiplies<>{}, true));
    auto fine = measure_from_k2(k, Q2(), d + 1);
    for (int v : T.leaves()) EXPECT_EQ(fine.value(d, T.cell(v).rep), mu.value(d, T.cell(v).rep));
  }
  StandardTree T(2, 3);
  auto dot = to_dot(T, cochain_from_measure(T, measure_from_k2(k, Q2(), 3)));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_CODE(cochain_from_measure(StandardTree(2, 2), measure_from_k2(k, Q2(), 3)), "DepthMismatch");
}

TEST(Integrate, Identities) {
  auto mu = measure_from_k2(integral_k2(), Q2(), 3);
  std::vector<long> cst(8, 4);
  // constant table against a measure of total volume one
  EXPECT_EQ(integrate(cst, mu).value, Q2().one());
  Rng g(101);
  for (int i = 0; i < 30; ++i) {
    std::vector<long> f(8), h(8), sum(8), scaled(8);
    for (int j = 0; j < 8; ++j) {
      f[j] = uniform(g, -3, 3), h[j] = uniform(g, -3, 3);
      sum[j] = f[j] + h[j], scaled[j] = 3 * f[j];
    }
    EXPECT_EQ(integrate(sum, mu).value, integrate(f, mu).value * integrate(h, mu).value);
    EXPECT_EQ(integrate(scaled, mu).value, pow(integrate(f, mu).value, 3));
  }
}

TEST(Pushforward, Mobius) {
  auto k = integral_k2();
  auto mu = measure_from_k2(k, Q2(), 3);
  auto id = RationalMap<PadicField>::mobius(Matrix2<PadicField>::identity(Q2()));
  EXPECT_EQ(measure_pushforward(id, mu, Q2()), mu);
  auto shift = RationalMap<PadicField>::mobius(Matrix2<PadicField>::translation(Q2().from_int(1)));
  EXPECT_EQ(measure_pushforward(shift, mu, Q2()), measure_from_k2(k.pullback(shift), Q2(), 3));
  auto M = RationalMap<PadicField>::mobius(Matrix2<PadicField>{Q2().from_int(3), Q2().from_int(1), Q2().from_int(2), Q2().from_int(1)});
  EXPECT_EQ(measure_pushforward(M, mu, Q2()), measure_from_k2(k.pullback(M), Q2(), 3));
  EXPECT_CODE(measure_pushforward(RationalMap<PadicField>::power(Q2(), 2), mu, Q2()), "MapNotCertified");
}

// The acceptance matrix: seeded randomized checks, one per criterion,
// shared by the command line `suite` and the acceptance test binary.
#pragma once
#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "analytic_approx.hpp"
#include "drinfeld.hpp"
#include "homology.hpp"
#include "random.hpp"
#include "residue_symbols.hpp"
#include "trees_measures.hpp"

namespace ultrak2 {

struct SuiteConfig {
  std::uint64_t seed = 0;
  double scale = 1.0;  // multiplies every case count
  bool corrupt = false;  // harness self-test: the Weil oracle forgets the point at infinity
  long count(long n) const { return std::max(1L, static_cast<long>(n * scale + 0.5)); }
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  long cases = 0;
  long failures = 0;
  std::string detail;  // first failure, or a summary of what was checked
  double seconds = 0;
};

namespace detail {

class Tally {
public:
  // one case; an escaping Error counts as a failure of that case
  template <class Fn>
  void run(Fn&& fn) {
    ++cases_;
    failed_here_ = false;
    try {
      fn();
    } catch (const Error& e) {
      note("exception " + std::string(e.what()));
    }
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) note(what);
  }
  long cases() const { return cases_; }
  long failures() const { return failures_; }
  const std::string& first() const { return first_; }

private:
  void note(const std::string& what) {
    if (!failed_here_) ++failures_;
    failed_here_ = true;
    if (first_.empty()) first_ = "case " + std::to_string(cases_) + ": " + what;
  }
  long cases_ = 0, failures_ = 0;
  bool failed_here_ = false;
  std::string first_;
};

inline CheckResult finish(int id, std::string name, const Tally& t, std::string ok_detail) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  r.cases = t.cases();
  r.failures = t.failures();
  r.pass = t.failures() == 0 && t.cases() > 0;
  r.detail = r.pass ? std::move(ok_detail) : t.first();
  return r;
}

template <ValuedField F>
std::size_t pick(Rng& g, const Subdomain<F>& U) {
  return static_cast<std::size_t>(uniform(g, 0, static_cast<long>(U.size()) - 1));
}

// multiply g by powers of linear factors at some roots of f
template <ValuedField F>
RationalFunction<F> share_roots(const RationalFunction<F>& f, RationalFunction<F> g, Rng& r) {
  for (auto& [a, n] : f.divisor())
    if (coin(r, 0.4)) g = g * RationalFunction<F>::linear(a).pow(static_cast<int>(uniform(r, 1, 2)));
  return g;
}

}  // namespace detail

// ------------------------------------------------------------ 1. Weil

inline CheckResult check_weil(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 1));
  detail::Tally t;
  const auto& P = PadicField::get(5);
  const auto& Q = FqtField::get(3);
  auto one = [&](const auto& K) {
    auto f = rand_split_function(K, g, 4);
    auto h = detail::share_roots(f, rand_split_function(K, g, 4), g);
    auto p = weil_product(f, h);
    if (cfg.corrupt) p /= tame_symbol(f, h, ProjPoint<std::decay_t<decltype(K)>>::infinity());
    t.expect(p == K.one(), "product of tame symbols is " + to_string(p));
  };
  long n = cfg.count(1000);
  for (long i = 0; i < n; ++i) t.run([&] { i % 2 ? one(Q) : one(P); });
  return detail::finish(1, "Weil reciprocity", t, "padic:5 and fqt_inf:3, exact product 1");
}

// ------------------------------------------------------- 2. axioms

inline CheckResult check_axioms(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 2));
  detail::Tally t;
  auto one = [&](const auto& K) {
    using F = std::decay_t<decltype(K)>;
    using RF = RationalFunction<F>;
    auto U = rand_subdomain(K, g, 4);
    const auto& D = U[detail::pick(g, U)];
    RF f1 = rand_invertible(U, g), f2 = rand_invertible(U, g), h = rand_invertible(U, g), h2 = rand_invertible(U, g);
    auto reg = [&](const RF& a, const RF& b) { return regulator(a, b, U, D); };
    t.expect(reg(f1 * f2, h) == reg(f1, h) * reg(f2, h), "not multiplicative in the first slot");
    t.expect(reg(f1, h * h2) == reg(f1, h) * reg(f1, h2), "not multiplicative in the second slot");
    t.expect(reg(f1, h) * reg(h, f1) == K.one(), "not antisymmetric");
    // Steinberg: both functions invertible on U, or support inside U
    // with the zero r of 1 - f placed in a hole too: c = (r - b)/(r - a)
    Elem<F> a = point_in_disk(U[detail::pick(g, U)], g), b = point_in_disk(U[detail::pick(g, U)], g),
            r = point_in_disk(U[detail::pick(g, U)], g);
    if (!(a == b) && !(r == a) && !(r == b)) {
      auto [s, s1] = steinberg_pair((r - b) / (r - a), a, b);
      t.expect(reg(s, s1) == K.one(), "{f, 1-f} != 1 on U");
    }
    auto st = rand_steinberg(K, g);
    t.expect(regulator_k2(st, U, D) == K.one(), "{f, 1-f} != 1 with support in U");
    Elem<F> c = rand_nonzero(K, g);
    t.expect(reg(RF::constant_fn(c), f1) == pow(c, deg_boundary(f1, U, D)), "{c, f} != c^deg");
    ValExp eps(uniform(g, 1, 3));
    auto fe = rand_near_one(U, eps, g);
    auto w = regulator_bound_check(fe, h, U, D, eps);
    t.expect(w.distance >= eps, "regulator of R_eps function outside U_eps");
  };
  long n = cfg.count(500);
  for (long i = 0; i < n; ++i) t.run([&] { i % 2 ? one(FqtField::get(3)) : one(PadicField::get(5)); });
  return detail::finish(2, "Regulator axioms", t, "bilinear, antisymmetric, Steinberg, constants, U_eps bound");
}

// ------------------------------------------------ 3. boundary product

inline CheckResult check_boundary_product(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 3));
  detail::Tally t;
  auto one = [&](const auto& K) {
    using F = std::decay_t<decltype(K)>;
    auto U = rand_subdomain(K, g, 5);
    K2Element<F> k(std::vector<K2Term<F>>{});
    int terms = static_cast<int>(uniform(g, 1, 3));
    for (int j = 0; j < terms; ++j)
      k = k + K2Element<F>::symbol(rand_invertible(U, g), rand_invertible(U, g), uniform(g, -2, 2) | 1);
    if (coin(g)) k = k + rand_steinberg(K, g);
    t.expect(is_in_K2(k, U), "generated element has a nontrivial symbol on U");
    Elem<F> p = K.one();
    for (auto& D : U.boundary()) p *= regulator_k2(k, U, D);
    t.expect(p == K.one(), "product over the boundary is " + to_string(p));
  };
  long n = cfg.count(200);
  for (long i = 0; i < n; ++i) t.run([&] { i % 2 ? one(FqtField::get(3)) : one(PadicField::get(5)); });
  return detail::finish(3, "Boundary product", t, "product over all boundary components is 1");
}

// -------------------------------------------------- 4. factorization

inline CheckResult check_factorization(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 4));
  detail::Tally t;
  auto one = [&](const auto& K) {
    using F = std::decay_t<decltype(K)>;
    using RF = RationalFunction<F>;
    auto U = rand_subdomain(K, g, 4);
    ValExp eps(uniform(g, 1, 2));
    auto f = rand_near_one(U, eps, g, 4);
    auto A = factorize(f, U, eps, 0), B = factorize(f, U, eps, 1);
    for (auto* fac : {&A, &B}) {
      RF prod = RF::constant_fn(fac->constant);
      for (auto& p : fac->parts) prod = prod * p;
      t.expect(prod == f, "parts do not reassemble f");
      for (std::size_t i = 0; i < U.size(); ++i)
        t.expect(in_R_eps(fac->parts[i], Subdomain<F>(K, {U[i]}), eps), "part outside R_eps of its disk complement");
    }
    for (std::size_t i = 0; i < U.size(); ++i) {
      RF r = A.parts[i] / B.parts[i];
      t.expect(r.is_constant() && in_unit_ball(r.constant(), eps), "balancing choices differ by more than U_eps");
    }
  };
  long n = cfg.count(200);
  for (long i = 0; i < n; ++i) t.run([&] { i % 2 ? one(FqtField::get(3)) : one(PadicField::get(5)); });
  return detail::finish(4, "Factorization", t, "exact reassembly; balance 0 vs 1 agree up to U_eps");
}

// --------------------------------------------------------- 5. degree

inline CheckResult check_degree(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 5));
  detail::Tally t;
  auto one = [&](const auto& K) {
    auto U = rand_subdomain(K, g, 4);
    auto f = rand_invertible(U, g, 5);
    for (auto& D : U.boundary()) t.expect(deg_boundary(f, U, D) == deg_via_symbol(f, U, D), "divisor count != log formula");
    auto e = rand_near_one(U, ValExp(1), g);
    for (auto& D : U.boundary()) t.expect(deg_boundary(e, U, D) == 0, "nonzero degree on O_1");
  };
  long n = cfg.count(500);
  for (long i = 0; i < n; ++i) t.run([&] { i % 2 ? one(FqtField::get(3)) : one(PadicField::get(5)); });
  return detail::finish(5, "Degree", t, "deg by counting equals deg by symbol; zero on O_1");
}

// -------------------------------------------------------- 6. pairing

inline CheckResult check_pairing(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 6));
  detail::Tally t;
  auto one = [&](const auto& K, int n) {
    auto U = rand_subdomain(K, g, n, n);
    t.expect(static_cast<int>(U.size()) == n, "generator returned the wrong boundary size");
    auto fam = dual_family(U);
    t.expect(static_cast<int>(fam.size()) == std::max(0, n - 1), "dual family has the wrong size");
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = 0; j + 1 < U.size(); ++j)
        t.expect(pairing(fam[i], H1Class::generator(U.size(), j), U) == (i == j ? 1 : 0), "deg matrix is not the identity");
  };
  long per = cfg.count(10);
  for (int n = 1; n <= 5; ++n)
    for (long i = 0; i < per; ++i) t.run([&] { i % 2 ? one(FqtField::get(3), n) : one(PadicField::get(5), n); });
  return detail::finish(6, "Perfect pairing", t, "n = 1..5 components, deg matrix = identity");
}

// --------------------------------------------------------- 7. Newton

inline CheckResult check_newton(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 7));
  detail::Tally t;
  auto one = [&](const auto& K) {
    using F = std::decay_t<decltype(K)>;
    auto [P, roots] = rand_split_poly(K, g, 8);
    Disk<F> D = rand_disk(K, g);
    if (roots.size() >= 2 && coin(g, 0.35)) {
      // a circle through another root
      auto& a = roots[static_cast<std::size_t>(uniform(g, 0, static_cast<long>(roots.size()) - 1))];
      auto& b = roots[static_cast<std::size_t>(uniform(g, 0, static_cast<long>(roots.size()) - 1))];
      if (!(a == b)) D = Disk<F>::finite(a, (a - b).valuation(), coin(g) ? DiskKind::open : DiskKind::closed);
    }
    int brute = 0, on_circle = 0;
    for (auto& r : roots) {
      brute += D.contains(r);
      if (!D.through_infinity() && (r - D.center()).valuation() == D.radius_exp()) ++on_circle;
    }
    t.expect(newton_root_count(P, D) == brute, "polygon count differs from membership count");
    if (!D.through_infinity() && D.is_open()) {
      bool threw = false;
      try {
        (void)newton_root_count(P, D, true);
      } catch (const Error& e) {
        threw = e.code() == "BoundaryRoot";
      }
      t.expect(threw == (on_circle > 0), "strict mode disagrees with boundary roots");
    }
  };
  long n = cfg.count(1000);
  for (long i = 0; i < n; ++i) t.run([&] { i % 2 ? one(FqtField::get(3)) : one(PadicField::get(5)); });
  return detail::finish(7, "Newton polygon oracle", t, "degree <= 8, counts equal brute force");
}

// ------------------------------------------------------ 8. invariance

namespace detail {

template <ValuedField F>
struct InvarianceInstance {
  RationalMap<F> h;
  Subdomain<F> U, Y;
  bool degree_zero = false;  // infinity pulls back through a root extraction
};

template <ValuedField F>
Matrix2<F> rand_matrix(const F& K, Rng& g) {
  while (true) {
    Matrix2<F> M{rand_digits(K, g, 0, 1), rand_digits(K, g, 0, 1), rand_digits(K, g, 0, 1), rand_digits(K, g, 0, 1)};
    if (!M.det().is_zero()) return M;
  }
}

template <ValuedField F>
Subdomain<F> mobius_image(const Matrix2<F>& M, const Subdomain<F>& U) {
  std::vector<Disk<F>> d;
  for (auto& D : U.boundary()) d.push_back(mobius_disk(M, D));
  return Subdomain<F>(U.field(), std::move(d));
}

// residue complement of S and, as the domain of z^n, of S pulled back
template <ValuedField F>
std::pair<Subdomain<F>, Subdomain<F>> power_pair(const F& K, int n, bool three_holes) {
  if (!three_holes) return {Subdomain<F>::annulus(K, ValExp(0), ValExp(0)), Subdomain<F>::annulus(K, ValExp(0), ValExp(0))};
  std::vector<GaloisField::elem> S{0};
  for (auto& u : K.roots_of_unity(static_cast<unsigned>(n))) S.push_back(K.residue(u));
  return {Subdomain<F>::residue_complement(K, S), Subdomain<F>::residue_complement(K, {0, 1})};
}

template <ValuedField F>
InvarianceInstance<F> rand_instance(const F& K, Rng& g, int kind, int n) {
  using Map = RationalMap<F>;
  switch (kind) {
    case 0: {  // Moebius onto a random subdomain
      Matrix2<F> M = rand_matrix(K, g);
      Subdomain<F> Y = coin(g, 0.3) ? Subdomain<F>::annulus(K, ValExp(0), ValExp(0)) : rand_subdomain(K, g, 3, 2);
      return {Map::mobius(M), mobius_image(M.inverse(), Y), Y};
    }
    case 1: {
      auto [U, Y] = power_pair(K, n, coin(g));
      return {Map::power(K, n), U, Y};
    }
    case 2: {  // Moebius then power
      Matrix2<F> M = rand_matrix(K, g);
      auto [U, Y] = power_pair(K, n, coin(g));
      return {Map::mobius(M).then(Map::power(K, n)), mobius_image(M.inverse(), U), Y};
    }
    default: {  // power then Moebius
      Matrix2<F> M = rand_matrix(K, g);
      auto [U, Y] = power_pair(K, n, coin(g));
      return {Map::power(K, n).then(Map::mobius(M)), U, mobius_image(M, Y), true};
    }
  }
}

// f with roots h(b) for points b in the holes of U; degree 0 if Y holds infinity
template <ValuedField F>
RationalFunction<F> rand_image_function(const InvarianceInstance<F>& I, Rng& g) {
  const F& K = I.U.field();
  std::map<Elem<F>, int> div;
  int total = 0;
  int n = static_cast<int>(uniform(g, 1, 3));
  for (int i = 0; i < n; ++i) {
    Elem<F> b = point_in_disk(I.U[pick(g, I.U)], g);
    ProjPoint<F> a = I.h.apply(ProjPoint<F>(b));
    if (a.is_inf()) continue;
    int m = coin(g) ? 1 : -1;
    div[a.value()] += m;
    total += m;
  }
  if ((I.degree_zero || I.Y.contains(ProjPoint<F>::infinity())) && total != 0) {
    for (int tries = 0; tries < 20; ++tries) {
      Elem<F> b = point_in_disk(I.U[pick(g, I.U)], g);
      ProjPoint<F> a = I.h.apply(ProjPoint<F>(b));
      if (a.is_inf()) continue;
      div[a.value()] -= total;
      total = 0;
      break;
    }
    if (total != 0) return RationalFunction<F>::constant_fn(rand_nonzero(K, g));
  }
  return from_divisor(rand_nonzero(K, g), div);
}

}  // namespace detail

inline CheckResult check_invariance(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 8));
  detail::Tally t;
  // z^3 splits over F_7(t) only; z^2 works over Q_5 and F_7(t)
  auto one = [&](const auto& K, int kind, int n) {
    using F = std::decay_t<decltype(K)>;
    auto I = detail::rand_instance(K, g, kind, n);
    K2Element<F> k(std::vector<K2Term<F>>{});
    int terms = static_cast<int>(uniform(g, 1, 2));
    for (int j = 0; j < terms; ++j)
      k = k + K2Element<F>::symbol(detail::rand_image_function(I, g), detail::rand_image_function(I, g));
    std::vector<long> c(I.U.size());
    for (auto& x : c) x = uniform(g, -2, 2);
    auto rep = invariance_check(I.h, I.U, I.Y, k, H1Class(c));
    t.expect(rep.pass, "pulled back " + to_string(rep.pulled) + " vs pushed " + to_string(rep.pushed));
  };
  long n = cfg.count(100);
  for (long i = 0; i < n; ++i) {
    int kind = static_cast<int>(i % 4);
    switch (i % 3) {
      case 0: t.run([&] { one(PadicField::get(5), kind, 2); }); break;
      case 1: t.run([&] { one(FqtField::get(7), kind, 2); }); break;
      default: t.run([&] { one(FqtField::get(7), kind, 3); }); break;
    }
  }
  return detail::finish(8, "Invariance under rational maps", t, "Moebius, z^2, z^3 and composites");
}

// ------------------------------------------------------------ 9. GTS

inline CheckResult check_gts(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 9));
  detail::Tally t;
  auto one = [&](const auto& K) {
    using F = std::decay_t<decltype(K)>;
    auto f = rand_split_function(K, g, 3);
    auto h = detail::share_roots(f, rand_split_function(K, g, 3), g);
    K2Element<F> k = K2Element<F>::symbol(f, h);
    if (coin(g, 0.3)) k = k + K2Element<F>::symbol(rand_split_function(K, g, 2), rand_split_function(K, g, 2));
    ResidueSet S;
    for (int j = 0; j < 2; ++j)
      if (coin(g)) S.insert(rand_residue(K, g));
    auto s = rand_residue(K, g);
    auto r1 = gts_check(k, s, S, K);
    t.expect(r1.pass, "nu = " + r1.reg_valuation.get_str() + ", T_s = " + r1.t_s.get_str());
    auto r2 = gts_check(k, s, S, K, 2);
    t.expect(r2.pass && r2.reg_valuation == 2 * r1.reg_valuation && r2.t_s == 2 * r1.t_s, "not linear under nu -> 2 nu");
  };
  long n = cfg.count(300);
  for (long i = 0; i < n; ++i) t.run([&] { i % 2 ? one(FqtField::get(3)) : one(PadicField::get(5)); });
  return detail::finish(9, "Generalized tame symbol", t, "nu({k}_D) = -T_s(k); scale 2 doubles both");
}

// -------------------------------------------------------- 10. measures

namespace detail {

// degree 0 functions with integral roots: trivial symbol at infinity
inline RationalFunction<PadicField> rand_integral_degree0(const PadicField& K, Rng& g) {
  std::map<PadicNumber, int> div;
  int total = 0;
  int n = static_cast<int>(uniform(g, 1, 3));
  for (int i = 0; i < n; ++i) {
    int m = coin(g) ? 1 : -1;
    div[K.from_int(uniform(g, 0, 31))] += m;
    total += m;
  }
  div[K.from_int(uniform(g, 0, 31))] -= total;
  return from_divisor(rand_nonzero(K, g, 0, 2), div);
}

inline K2Element<PadicField> rand_measure_k2(const PadicField& K, Rng& g) {
  K2Element<PadicField> k(std::vector<K2Term<PadicField>>{});
  int terms = static_cast<int>(uniform(g, 1, 2));
  for (int j = 0; j < terms; ++j) {
    auto f = coin(g, 0.25) ? RationalFunction<PadicField>::constant_fn(rand_nonzero(K, g, 0, 2)) : rand_integral_degree0(K, g);
    k = k + K2Element<PadicField>::symbol(f, rand_integral_degree0(K, g));
  }
  return k;
}

inline PadicNumber leaf_product(const EndsMeasure<PadicNumber>& mu, const std::function<bool(std::size_t)>& in) {
  PadicNumber r = mu.neutral();
  for (std::size_t i = 0; i < mu.leaves().size(); ++i)
    if (in(i)) r *= mu.leaves()[i];
  return r;
}

inline bool among(const std::vector<PadicNumber>& gens, const PadicNumber& x) {
  return std::find(gens.begin(), gens.end(), x) != gens.end();
}

}  // namespace detail

inline CheckResult check_measures(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 10));
  detail::Tally t;
  const auto& K = PadicField::get(2);
  const int depth = 3;
  StandardTree tree(2, depth);
  long n = cfg.count(20);
  for (long i = 0; i < n; ++i)
    t.run([&] {
      auto k = detail::rand_measure_k2(K, g);
      auto mu = measure_from_k2(k, K, depth);
      // additivity, cell by cell from the symbols themselves
      for (int l = 0; l < depth; ++l)
        for (long r = 0; r < tree.width(l); ++r) {
          auto cell = [&](int lv, long rep) {
            return regulator_measure(k, Disk<PadicField>::finite(K.from_int(rep), ValExp(lv - 1)));
          };
          PadicNumber kids = K.one();
          for (long d = 0; d < 2; ++d) kids *= cell(l + 1, r + d * tree.width(l));
          t.expect(cell(l, r) == kids, "not additive at level " + std::to_string(l));
          t.expect(cell(l, r) == mu.value(l, r), "table disagrees with the direct symbol product");
        }
      t.expect(mu.total() == K.one(), "total volume " + to_string(mu.total()));
      auto c = cochain_from_measure(tree, mu);
      t.expect(harmonic_check(tree.graph(), c, K.one(), std::multiplies<>{}, true), "cochain not harmonic");
      t.expect(c.at(tree.graph().out_edges(tree.infinity_vertex()).front()) == K.one(), "not harmonic at infinity");
      auto mu4 = measure_from_k2(k, K, depth + 1);
      for (int l = 0; l <= depth; ++l)
        for (long r = 0; r < tree.width(l); ++r)
          t.expect(mu4.value(l, r) == mu.value(l, r), "depth 3 and depth 4 tables disagree");

      // integration identities on integer tables
      std::size_t L = mu.leaves().size();
      std::vector<long> f(L), h(L), sum(L);
      for (std::size_t j = 0; j < L; ++j) {
        f[j] = uniform(g, -2, 2);
        h[j] = uniform(g, -2, 2);
        sum[j] = f[j] + h[j];
      }
      auto If = integrate(f, mu), Ih = integrate(h, mu), Is = integrate(sum, mu);
      t.expect(Is.value == If.value * Ih.value, "integral not additive");
      // every generator of mu(f), mu(g), mu(f+g) is a product of level sets of f x g
      auto pair_product = [&](const std::function<bool(long, long)>& sel) {
        return detail::leaf_product(mu, [&](std::size_t j) { return sel(f[j], h[j]); });
      };
      for (auto& [a, m] : If.level_sets)
        if (a) t.expect(m == pair_product([a = a](long x, long) { return x == a; }), "mu(f) not inside mu(f x g)");
      for (auto& [b, m] : Ih.level_sets)
        if (b) t.expect(m == pair_product([b = b](long, long y) { return y == b; }), "mu(g) not inside mu(f x g)");
      for (auto& [s, m] : Is.level_sets)
        if (s) t.expect(m == pair_product([s = s](long x, long y) { return x + y == s; }), "mu(f+g) not inside mu(f x g)");
      // m tensor f and phi o f
      for (long m : {-2L, 0L, 3L}) {
        std::vector<long> mf(L);
        for (std::size_t j = 0; j < L; ++j) mf[j] = m * f[j];
        auto Im = integrate(mf, mu);
        t.expect(Im.value == pow(If.value, m), "integral of m f is not m times the integral");
        for (auto& x : Im.modulus) t.expect(detail::among(If.modulus, x), "mu(m f) not inside mu(f)");
      }
      // projection Z x Z -> Z applied to f x g recovers f
      std::vector<long> proj(L);
      for (std::size_t j = 0; j < L; ++j) proj[j] = f[j];
      auto Ip = integrate(proj, mu);
      t.expect(Ip.value == If.value, "projection changes the integral");
      for (auto& x : Ip.modulus) t.expect(detail::among(If.modulus, x), "mu(phi o f) not inside mu(f)");
    });
  return detail::finish(10, "Measures and harmonicity", t,
                        "padic:2 depth 3: additive, total 1, harmonic, integrals exact, depth 4 consistent");
}

// ---------------------------------------------------- 11. pushforward

inline CheckResult check_pushforward(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 11));
  detail::Tally t;
  const auto& K = PadicField::get(2);
  auto odd = [&] { return K.make(mpq_class(2 * uniform(g, -4, 4) + 1, 2 * uniform(g, 0, 2) + 1)); };
  long n = cfg.count(50);
  for (long i = 0; i < n; ++i)
    t.run([&] {
      auto k = detail::rand_measure_k2(K, g);
      Matrix2<PadicField> M{odd(), K.from_int(uniform(g, -4, 4)), K.from_int(2 * uniform(g, -3, 3)), odd()};
      auto h = RationalMap<PadicField>::mobius(M);
      auto lhs = measure_from_k2(k.pullback(h), K, 3);
      auto rhs = measure_pushforward(h, measure_from_k2(k, K, 3), K);
      t.expect(lhs == rhs, "{h^* k} differs from h^* {k}");
    });
  return detail::finish(11, "Pushforward compatibility", t, "Moebius maps preserving Z_2, depth 3 tables equal");
}

// ----------------------------------------------------------- 12. Tate

inline CheckResult check_tate(const SuiteConfig&) {
  detail::Tally t;
  const auto& K = PadicField::get(5);
  auto n = [&](long a, long b = 1) { return K.make(mpq_class(a, b)); };
  Elem<PadicField> per = n(1, 5);
  using TQ = ThetaQuotient<PadicField>;
  std::vector<std::pair<TQ, TQ>> cases{
      {TQ{{n(2), n(3)}, {n(1), n(6)}, per}, TQ{{n(4), n(7)}, {n(2), n(14)}, per}},
      {TQ{{n(2), n(8)}, {n(4), n(4)}, per}, TQ{{n(3), n(7, 5)}, {n(1), n(21, 5)}, per}},
      {TQ{{n(6, 5), n(2)}, {n(3), n(4, 5)}, per}, TQ{{n(2), n(2)}, {n(1), n(4)}, per}},
  };
  std::string worst;
  for (auto& [f, h] : cases)
    t.run([&] {
      auto r = tate_reciprocity_check(f, h, 20, ValExp(10));
      t.expect(r.residual >= ValExp(10), "|product - 1| exponent " + r.residual.str());
      t.expect(r.agree_inner >= ValExp(10) && r.agree_outer >= ValExp(10),
               "boundary regulators agree only to " + r.agree_inner.str() + " / " + r.agree_outer.str());
      worst += (worst.empty() ? "" : ", ") + r.residual.str();
    });
  return detail::finish(12, "Tate reciprocity", t, "t = 1/5, N = 20, delta = 5^-10; residual exponents " + worst);
}

// ------------------------------------------------------- 13. Drinfeld

inline CheckResult check_drinfeld(const SuiteConfig&) {
  detail::Tally t;
  const int depth = 4, N = 6;
  const ValExp delta(5);
  std::string moduli;
  for (unsigned q : {2u, 3u}) {
    const auto& K = FqtField::get(q);
    std::string tag = "q = " + std::to_string(q) + ": ";
    t.run([&] {
      auto hr = haar_check(haar_table(K, depth));
      t.expect(hr.pass, tag + "Haar table inconsistent");
      auto r = compare_with_symbol(DrinfeldCase::deg, K, K.one(), K.one(), depth, N, delta);
      t.expect(r.deg_integral == -static_cast<long>(q), tag + "deg integral " + r.deg_integral.get_str());
    });
    FqtNumber c = K.t() / (K.t() + K.one());
    t.run([&] {
      auto r = compare_with_symbol(DrinfeldCase::const_eA, K, c, c, depth, N, delta);
      t.expect(r.pass && *r.expected == pow(c, -static_cast<long>(q)), tag + "case ii off by exponent " + r.distance.str());
    });
    t.run([&] {
      auto r = compare_with_symbol(DrinfeldCase::eA_eA, K, c, c, depth, N, delta);
      t.expect(r.pass && *r.expected == pow(-K.one(), -static_cast<long>(q)), tag + "case iii off by exponent " + r.distance.str());
    });
    t.run([&] {
      auto b1 = K.uniformizer(), b2 = K.uniformizer() + pow(K.uniformizer(), 2);
      auto r = compare_with_symbol(DrinfeldCase::rational, K, b1, b2, 2, N, ValExp(3));
      t.expect(r.pass, tag + "case i off by exponent " + r.distance.str());
    });
    t.run([&] {
      auto y = y_independence_check(K, std::nullopt, {1, 2, 3}, depth, N);
      t.expect(y.values_agree, tag + "integral depends on |y|");
      std::string gens;
      for (auto& I : y.runs)
        for (auto& m : I.modulus) gens += (gens.empty() ? "" : " ") + m.get_str();
      t.expect(y.moduli_in_Z, tag + "rescaled moduli not in Z: generators " + gens);
    });
  }
  return detail::finish(13, "Drinfeld integral", t, "q = 2, 3: deg, ii, iii, i, y-independence, moduli in Z");
}

// -------------------------------------------------------- 14. Cauchy

inline CheckResult check_cauchy(const SuiteConfig& cfg) {
  Rng g(derive_seed(cfg.seed, 14));
  detail::Tally t;
  auto one = [&](const auto& K) {
    using F = std::decay_t<decltype(K)>;
    using RF = RationalFunction<F>;
    auto U = rand_subdomain(K, g, 4);
    const auto& D = U[detail::pick(g, U)];
    const int len = 5;
    // f_n = f_0 r_1 ... r_n with r_j in R_(eps_j), eps_j increasing
    auto chain = [&](RF base) {
      std::vector<RF> fs{base};
      std::vector<ValExp> eps;
      long e = uniform(g, 1, 2);
      for (int j = 1; j <= len; ++j) {
        e += uniform(g, 0, 1);
        eps.push_back(ValExp(e));
        fs.push_back(fs.back() * rand_near_one(U, ValExp(e), g, 2));
      }
      return std::pair{fs, eps};
    };
    auto [fs, ef] = chain(rand_invertible(U, g));
    auto [gs, eg] = chain(rand_invertible(U, g));
    // certificate of stage n: every later factor lies in R_(eps_j), j > n
    auto cert = [&](const std::vector<ValExp>& e, int n) {
      ValExp c = ValExp::infinity();
      for (int j = n; j < len; ++j) c = std::min(c, e[static_cast<std::size_t>(j)]);
      return c;
    };
    int a = static_cast<int>(uniform(g, 0, len)), b = static_cast<int>(uniform(g, 0, len));
    int lo = std::min(a, b);
    Elem<F> x = regulator(fs[a], gs[lo], U, D), y = regulator(fs[b], gs[b], U, D);
    ValExp dist = (K.one() - x / y).valuation();
    ValExp bound = std::min(cert(ef, lo), cert(eg, lo));
    t.expect(dist >= bound, "ratio exponent " + dist.str() + " below the certified " + bound.str());
  };
  long n = cfg.count(100);
  for (long i = 0; i < n; ++i) t.run([&] { i % 2 ? one(FqtField::get(3)) : one(PadicField::get(5)); });
  return detail::finish(14, "Cauchy surrogate", t, "nested approximants stay within the certified U_eps");
}

// ------------------------------------------------------------ driver

struct CriterionEntry {
  int id;
  std::function<CheckResult(const SuiteConfig&)> run;
};

inline const std::vector<CriterionEntry>& criteria() {
  static const std::vector<CriterionEntry> all{
      {1, check_weil},        {2, check_axioms},       {3, check_boundary_product}, {4, check_factorization},
      {5, check_degree},      {6, check_pairing},      {7, check_newton},           {8, check_invariance},
      {9, check_gts},         {10, check_measures},    {11, check_pushforward},     {12, check_tate},
      {13, check_drinfeld},   {14, check_cauchy},
  };
  return all;
}

inline CheckResult run_criterion(int id, const SuiteConfig& cfg) {
  for (auto& c : criteria())
    if (c.id == id) {
      auto t0 = std::chrono::steady_clock::now();
      CheckResult r = c.run(cfg);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  fail("UnknownCriterion", std::to_string(id));
}

inline std::vector<CheckResult> run_suite(const SuiteConfig& cfg, const std::set<int>& only = {}) {
  std::vector<CheckResult> out;
  for (auto& c : criteria())
    if (only.empty() || only.count(c.id)) out.push_back(run_criterion(c.id, cfg));
  return out;
}

inline std::string format_line(const CheckResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.name << "  [" << r.cases << " cases, "
     << r.failures << " failed, ";
  os.setf(std::ios::fixed);
  os.precision(2);
  os << r.seconds << " s]  " << r.detail;
  return os.str();
}

}  // namespace ultrak2

// Seeded generators for the property checks: field elements of bounded
// size, points inside a disk, random subdomains and functions adapted to
// them.  Everything is driven by one std::mt19937_64.
#pragma once
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "k2reg.hpp"

namespace ultrak2 {

using Rng = std::mt19937_64;

inline long uniform(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }
inline bool coin(Rng& g, double p = 0.5) { return std::bernoulli_distribution(p)(g); }

// Seeds derived from a master seed and a stream label, so adding a check
// never shifts the draws of another.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <ValuedField F>
GaloisField::elem rand_residue(const F& K, Rng& g, bool nonzero = false) {
  long q = static_cast<long>(K.residue_field().order());
  return static_cast<GaloisField::elem>(uniform(g, nonzero ? 1 : 0, q - 1));
}

// sum of digits times pi^k for lo <= k <= hi; over Q this is a rational of
// bounded height, over F_q(t) a polynomial in t over t^hi
template <ValuedField F>
Elem<F> rand_digits(const F& K, Rng& g, int lo, int hi) {
  Elem<F> x = K.zero(), pk = pow(K.uniformizer(), lo);
  for (int k = lo; k <= hi; ++k, pk *= K.uniformizer()) x += K.lift(rand_residue(K, g)) * pk;
  return x;
}

// a unit: nonzero leading digit, optionally divided by another unit
template <ValuedField F>
Elem<F> rand_unit(const F& K, Rng& g, int prec = 2) {
  Elem<F> u = K.lift(rand_residue(K, g, true)) + rand_digits(K, g, 1, prec);
  if (coin(g, 0.3)) u /= K.lift(rand_residue(K, g, true)) + rand_digits(K, g, 1, 1);
  return u;
}

template <ValuedField F>
Elem<F> rand_nonzero(const F& K, Rng& g, int lo = -1, int hi = 2) {
  return rand_unit(K, g) * pow(K.uniformizer(), uniform(g, lo, hi));
}

inline long ceil_exp(const ValExp& e) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), e.exponent().get_num_mpz_t(), e.exponent().get_den_mpz_t());
  return r.get_si();
}
inline long floor_exp(const ValExp& e) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), e.exponent().get_num_mpz_t(), e.exponent().get_den_mpz_t());
  return r.get_si();
}

// the smallest integer valuation pi^k of a step that stays inside a finite
// disk around its center, in units of the uniformizer valuation
template <ValuedField F>
long inner_step_exponent(const Disk<F>& D) {
  const F& K = D.field();
  ValExp unit = K.uniformizer().valuation();
  ValExp e = D.radius_exp();
  mpq_class r = e.exponent() / unit.exponent();
  ValExp re(r);
  long k = ceil_exp(re);
  if (D.is_open() && mpq_class(k) == r) ++k;
  return k;
}

// a finite point of D (D may pass through infinity)
template <ValuedField F>
Elem<F> point_in_disk(const Disk<F>& D, Rng& g) {
  const F& K = D.field();
  if (!D.through_infinity()) {
    if (coin(g, 0.2)) return D.center();
    long k = inner_step_exponent(D) + uniform(g, 0, 2);
    return D.center() + rand_unit(K, g) * pow(K.uniformizer(), k);
  }
  // v(z - a) < -e (open) or <= -e (closed)
  mpq_class r = (-D.radius_exp()).exponent() / K.uniformizer().valuation().exponent();
  long k = floor_exp(ValExp(r));
  if (D.is_open() && mpq_class(k) == r) --k;
  k -= uniform(g, 0, 2);
  return D.center() + rand_unit(K, g) * pow(K.uniformizer(), k);
}

// A subdomain with between 1 and max_holes boundary disks.  Finite holes
// lie in the closed unit disk or on |z| = base when the hole at infinity is
// small enough; disjointness failures are resampled.
template <ValuedField F>
Subdomain<F> rand_subdomain(const F& K, Rng& g, int max_holes = 4, int min_holes = 1) {
  static const long numer[] = {0, 1, 1, 2, 3};
  static const long denom[] = {1, 2, 1, 1, 2};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    int n = static_cast<int>(uniform(g, min_holes, max_holes));
    std::vector<Disk<F>> d;
    bool outer = coin(g, 0.75);
    long outer_e = uniform(g, 0, 1);
    if (outer) d.push_back(Disk<F>::at_infinity(K, ValExp(outer_e)));
    int tries = 0;
    while (static_cast<int>(d.size()) < n && tries++ < 40) {
      Disk<F> cand = [&] {
        if (outer_e == 1 && coin(g, 0.25))
          return Disk<F>::finite(rand_unit(K, g, 1) * K.uniformizer().inv(), ValExp(0));
        int i = static_cast<int>(uniform(g, 0, 4));
        return Disk<F>::finite(rand_digits(K, g, 0, 2), ValExp(mpq_class(numer[i], denom[i])));
      }();
      bool ok = true;
      for (auto& D : d) ok = ok && Disk<F>::relation(D, cand) == DiskRelation::disjoint;
      if (ok) d.push_back(cand);
    }
    if (static_cast<int>(d.size()) < std::max(min_holes, 1)) continue;
    return Subdomain<F>(K, std::move(d));
  }
  fail("GeneratorExhausted", "could not place disjoint disks");
}

template <class E>
using FieldOf = std::remove_cvref_t<decltype(std::declval<const E&>().field())>;

template <class E, class F = FieldOf<E>>
RationalFunction<F> from_divisor(const E& c, const std::map<E, int>& div) {
  typename RationalFunction<F>::Divisor d;
  for (auto& [a, n] : div)
    if (n) d.emplace_back(a, n);
  return RationalFunction<F>::make(c, std::move(d));
}

// split function with roots anywhere: n_roots points of bounded size
template <ValuedField F>
RationalFunction<F> rand_split_function(const F& K, Rng& g, int max_roots = 4) {
  std::map<Elem<F>, int> div;
  int n = static_cast<int>(uniform(g, 0, max_roots));
  for (int i = 0; i < n; ++i) {
    long m = uniform(g, -2, 2);
    if (m == 0) m = 1;
    div[rand_digits(K, g, -1, 2)] += static_cast<int>(m);
  }
  return from_divisor(rand_nonzero(K, g), div);
}

// zeros and poles in the holes of U; degree 0 whenever infinity lies in U
template <ValuedField F>
RationalFunction<F> rand_invertible(const Subdomain<F>& U, Rng& g, int max_roots = 4) {
  const F& K = U.field();
  if (U.size() == 0) return RationalFunction<F>::constant_fn(rand_nonzero(K, g));
  std::map<Elem<F>, int> div;
  int n = static_cast<int>(uniform(g, 0, max_roots));
  int total = 0;
  for (int i = 0; i < n; ++i) {
    long m = uniform(g, -2, 2);
    if (m == 0) m = -1;
    const Disk<F>& D = U[static_cast<std::size_t>(uniform(g, 0, static_cast<long>(U.size()) - 1))];
    div[point_in_disk(D, g)] += static_cast<int>(m);
    total += static_cast<int>(m);
  }
  if (U.contains(ProjPoint<F>::infinity()) && total != 0) {
    // balance the degree inside some hole
    const Disk<F>& D = U[0];
    div[point_in_disk(D, g)] -= total;
  }
  auto f = from_divisor(rand_nonzero(K, g), div);
  if (U.contains(ProjPoint<F>::infinity()) && f.ord_inf() != 0) return rand_invertible(U, g, max_roots);
  return f;
}

// f in R_eps(U): pairs (z - a)/(z - b) with a, b close inside one hole and
// a constant in U_eps
template <ValuedField F>
RationalFunction<F> rand_near_one(const Subdomain<F>& U, const ValExp& eps, Rng& g, int max_pairs = 3) {
  const F& K = U.field();
  mpq_class unit = K.uniformizer().valuation().exponent();
  long ke = ceil_exp(ValExp(eps.exponent() / unit));
  Elem<F> c = K.one() + rand_digits(K, g, 0, 1) * pow(K.uniformizer(), ke);
  if (c.is_zero()) c = K.one();
  std::map<Elem<F>, int> div;
  if (U.size() > 0) {
    int n = static_cast<int>(uniform(g, 0, max_pairs));
    for (int i = 0; i < n; ++i) {
      const Disk<F>& D = U[static_cast<std::size_t>(uniform(g, 0, static_cast<long>(U.size()) - 1))];
      Elem<F> b = point_in_disk(D, g);
      // |a - b| <= base^(-eps) times the distance from b to U
      ValExp dist = D.through_infinity() ? (b - D.center()).valuation() : D.radius_exp();
      long k = ceil_exp(ValExp((dist + eps).exponent() / unit)) + uniform(g, 0, 1);
      Elem<F> a = b + rand_unit(K, g) * pow(K.uniformizer(), k);
      if (!D.contains(a)) continue;
      long m = coin(g) ? 1 : -1;
      div[a] += static_cast<int>(m);
      div[b] -= static_cast<int>(m);
    }
  }
  auto f = from_divisor(c, div);
  if (!in_R_eps(f, U, eps)) fail("GeneratorBug", "near-one function outside R_eps");
  return f;
}

// f = c (z - a)/(z - b) together with 1 - f in factored form
template <class E, class F = FieldOf<E>>
std::pair<RationalFunction<F>, RationalFunction<F>> steinberg_pair(const E& c, const E& a, const E& b) {
  const F& K = c.field();
  auto f = RationalFunction<F>::make(c, {{a, 1}, {b, -1}});
  if (c == K.one()) return {f, RationalFunction<F>::make(a - b, {{b, -1}})};
  Elem<F> r = (b - c * a) / (K.one() - c);
  return {f, RationalFunction<F>::make(K.one() - c, {{r, 1}, {b, -1}})};
}

template <ValuedField F>
K2Element<F> rand_steinberg(const F& K, Rng& g) {
  while (true) {
    Elem<F> a = rand_digits(K, g, -1, 2), b = rand_digits(K, g, -1, 2);
    if (a == b) continue;
    auto [f, h] = steinberg_pair(rand_nonzero(K, g), a, b);
    return K2Element<F>::symbol(f, h);
  }
}

// split polynomial of degree 1..max_deg with clustered roots; also returns
// the roots with multiplicity
template <ValuedField F>
std::pair<Poly<F>, std::vector<Elem<F>>> rand_split_poly(const F& K, Rng& g, int max_deg = 8) {
  int n = static_cast<int>(uniform(g, 1, max_deg));
  std::vector<Elem<F>> roots;
  Elem<F> centre = rand_digits(K, g, -1, 1);
  for (int i = 0; i < n; ++i) {
    if (!roots.empty() && coin(g, 0.15)) {
      roots.push_back(roots[static_cast<std::size_t>(uniform(g, 0, static_cast<long>(roots.size()) - 1))]);
      continue;
    }
    Elem<F> r = coin(g, 0.6) ? centre + rand_unit(K, g) * pow(K.uniformizer(), uniform(g, -1, 3)) : rand_digits(K, g, -1, 2);
    roots.push_back(r);
  }
  Poly<F> P = Poly<F>::constant(rand_nonzero(K, g));
  for (auto& r : roots) P = P * Poly<F>::linear(r);
  return {P, roots};
}

// a random disk with rational radius exponent, finite or through infinity
template <ValuedField F>
Disk<F> rand_disk(const F& K, Rng& g) {
  static const long numer[] = {-2, -1, -1, 0, 1, 1, 2, 3, 5};
  static const long denom[] = {1, 1, 2, 1, 2, 1, 1, 1, 2};
  int i = static_cast<int>(uniform(g, 0, 8));
  ValExp e(mpq_class(numer[i], denom[i]));
  DiskKind kind = coin(g) ? DiskKind::open : DiskKind::closed;
  if (coin(g, 0.2)) return Disk<F>::at_infinity(e, kind, rand_digits(K, g, 0, 1));
  return Disk<F>::finite(rand_digits(K, g, -1, 2), e, kind);
}

}  // namespace ultrak2

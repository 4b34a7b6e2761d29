// Formal K_2 elements, their regulators on boundary disks and on H_1
// classes, and the pullback comparison along rational maps.
#pragma once
#include <set>
#include <vector>

#include "homology.hpp"

namespace ultrak2 {

template <ValuedField F>
struct K2Term {
  RationalFunction<F> f, g;
  long e = 1;
};

// sum of e_i (f_i x g_i), no relations imposed
template <ValuedField F>
class K2Element {
public:
  K2Element() = default;
  K2Element(std::vector<K2Term<F>> terms) : terms_(std::move(terms)) {}
  static K2Element symbol(RationalFunction<F> f, RationalFunction<F> g, long e = 1) {
    return K2Element({K2Term<F>{std::move(f), std::move(g), e}});
  }

  const std::vector<K2Term<F>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  friend K2Element operator+(const K2Element& a, const K2Element& b) {
    std::vector<K2Term<F>> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return K2Element(std::move(t));
  }
  K2Element operator-() const {
    std::vector<K2Term<F>> t = terms_;
    for (auto& x : t) x.e = -x.e;
    return K2Element(std::move(t));
  }
  friend K2Element operator-(const K2Element& a, const K2Element& b) { return a + (-b); }

  // finite support points of every function, sorted
  std::vector<Elem<F>> support() const {
    std::set<Elem<F>> s;
    for (auto& t : terms_) {
      for (auto& [a, n] : t.f.divisor()) s.insert(a);
      for (auto& [a, n] : t.g.divisor()) s.insert(a);
    }
    return {s.begin(), s.end()};
  }
  bool touches_infinity() const {
    for (auto& t : terms_)
      if (t.f.ord_inf() != 0 || t.g.ord_inf() != 0) return true;
    return false;
  }

  K2Element pullback(const RationalMap<F>& h) const {
    std::vector<K2Term<F>> t;
    for (auto& x : terms_) t.push_back({h.pullback(x.f), h.pullback(x.g), x.e});
    return K2Element(std::move(t));
  }

private:
  std::vector<K2Term<F>> terms_;
};

template <ValuedField F>
Elem<F> tame_symbol(const K2Element<F>& k, const ProjPoint<F>& x, const F& K) {
  Elem<F> r = K.one();
  for (auto& t : k.terms()) r *= pow(tame_symbol(t.f, t.g, x), t.e);
  return r;
}

// every tame symbol of k at points of U is trivial
template <ValuedField F>
bool is_in_K2(const K2Element<F>& k, const Subdomain<F>& U) {
  const F& K = U.field();
  for (auto& x : k.support())
    if (U.contains(x) && !(tame_symbol(k, ProjPoint<F>(x), K) == K.one())) return false;
  if (k.touches_infinity() && U.contains(ProjPoint<F>::infinity()))
    if (!(tame_symbol(k, ProjPoint<F>::infinity(), K) == K.one())) return false;
  return true;
}

// U with a small open disk removed around each support point of k lying in
// U.  The radius exponent is `margin` plus the largest exponent among the
// distances to other support points and to the boundary data, so the new
// disks are pairwise disjoint and miss the old boundary.
template <ValuedField F>
Subdomain<F> shrink_around_support(const K2Element<F>& k, const Subdomain<F>& U, long margin = 1) {
  const F& K = U.field();
  auto pts = k.support();
  std::vector<Disk<F>> extra;
  for (auto& p : pts) {
    if (!U.contains(p)) continue;
    ValExp r(0);
    for (auto& q : pts)
      if (!(q == p)) r = std::max(r, (p - q).valuation());
    for (auto& D : U.boundary())
      r = std::max(r, D.through_infinity() ? -D.radius_exp() : (p - D.center()).valuation());
    extra.push_back(Disk<F>::finite(p, r + ValExp(margin)));
  }
  if (k.touches_infinity() && U.contains(ProjPoint<F>::infinity())) {
    ValExp r(0);
    for (auto& q : pts)
      if (!q.is_zero()) r = std::max(r, -q.valuation());
    for (auto& D : U.boundary()) {
      // no boundary disk passes through infinity here
      r = std::max(r, -D.radius_exp());
      if (!D.center().is_zero()) r = std::max(r, -D.center().valuation());
    }
    extra.push_back(Disk<F>::at_infinity(K, r + ValExp(margin)));
  }
  return U.with_extra(std::move(extra));
}

// {k}_D for D in the boundary of U; functions may have zeros and poles on U
template <ValuedField F>
Elem<F> regulator_k2(const K2Element<F>& k, const Subdomain<F>& U, const Disk<F>& D, long margin = 1) {
  U.index_of(D);
  Subdomain<F> Y = shrink_around_support(k, U, margin);
  Elem<F> r = U.field().one();
  for (auto& t : k.terms()) r *= pow(regulator(t.f, t.g, Y, D), t.e);
  return r;
}

template <ValuedField F>
Elem<F> regulator_class(const K2Element<F>& k, const Subdomain<F>& U, const H1Class& c) {
  if (c.size() != U.size()) fail("IndexMismatch", "class lives on another subdomain");
  if (!is_in_K2(k, U)) fail("NotInK2", "a tame symbol on U is nontrivial");
  Elem<F> r = U.field().one();
  for (std::size_t i = 0; i < U.size(); ++i)
    if (c[i]) r *= pow(regulator_k2(k, U, U[i]), c[i]);
  return r;
}

template <ValuedField F>
struct InvarianceReport {
  Elem<F> pulled;   // {h^* k}_c on U
  Elem<F> pushed;   // {k}_{H_1(h) c} on Y
  H1Class image;
  bool pass;
};

template <ValuedField F>
InvarianceReport<F> invariance_check(const RationalMap<F>& h, const Subdomain<F>& U, const Subdomain<F>& Y,
                                     const K2Element<F>& k, const H1Class& c) {
  if (!is_in_K2(k, Y)) fail("NotInK2", "k has a nontrivial tame symbol on Y");
  H1Class img = h1_pushforward(h.as_polyfrac(), U, Y, c);
  Elem<F> left = regulator_class(k.pullback(h), U, c);
  Elem<F> right = regulator_class(k, Y, img);
  return {left, right, img, left == right};
}

}  // namespace ultrak2

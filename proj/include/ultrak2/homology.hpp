// Degrees along boundary components, H_1 of a subdomain and the pushforward
// along a rational map.
#pragma once
#include <vector>

#include "symbols.hpp"

namespace ultrak2 {

// zeros minus poles of f inside D (infinity included when it lies in D)
template <ValuedField F>
int degree_in(const RationalFunction<F>& f, const Disk<F>& D) {
  int d = 0;
  for (auto& [a, n] : f.divisor())
    if (D.contains(a)) d += n;
  if (D.through_infinity()) d += f.ord_inf();
  return d;
}

template <ValuedField F>
int deg_boundary(const RationalFunction<F>& f, const Subdomain<F>& U, const Disk<F>& D) {
  require_invertible(f, U);
  U.index_of(D);
  return degree_in(f, D);
}

// the same degree read off |{c, f}_D| = |c|^deg with c the uniformizer
template <ValuedField F>
int deg_via_symbol(const RationalFunction<F>& f, const Subdomain<F>& U, const Disk<F>& D) {
  const F& K = f.field();
  Elem<F> v = regulator(RationalFunction<F>::constant_fn(K.uniformizer()), f, U, D);
  mpq_class d = v.valuation().exponent() / K.uniformizer().valuation().exponent();
  if (d.get_den() != 1) fail("DegreeMismatch", "non-integral log");
  return static_cast<int>(d.get_num().get_si());
}

// element of Z[boundary] / (sum of all components), stored with the first
// coefficient made 0
class H1Class {
public:
  H1Class() = default;
  explicit H1Class(std::vector<long> coeffs) : c_(std::move(coeffs)) { canonicalize(); }
  static H1Class generator(std::size_t n, std::size_t i) {
    std::vector<long> c(n, 0);
    c.at(i) = 1;
    return H1Class(std::move(c));
  }

  std::size_t size() const { return c_.size(); }
  const std::vector<long>& coeffs() const { return c_; }
  long operator[](std::size_t i) const { return c_[i]; }
  bool is_zero() const {
    for (long x : c_)
      if (x) return false;
    return true;
  }

  friend H1Class operator+(const H1Class& a, const H1Class& b) {
    same(a, b);
    std::vector<long> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] + b.c_[i];
    return H1Class(std::move(r));
  }
  friend H1Class operator*(long k, const H1Class& a) {
    std::vector<long> r = a.c_;
    for (auto& x : r) x *= k;
    return H1Class(std::move(r));
  }
  friend bool operator==(const H1Class& a, const H1Class& b) = default;

private:
  static void same(const H1Class& a, const H1Class& b) {
    if (a.c_.size() != b.c_.size()) fail("IndexMismatch", "classes on different subdomains");
  }
  void canonicalize() {
    if (c_.empty()) return;
    long s = c_[0];
    for (auto& x : c_) x -= s;
  }
  std::vector<long> c_;
};

template <ValuedField F>
H1Class h1_class(std::vector<long> coeffs, const Subdomain<F>& U) {
  if (coeffs.size() != U.size()) fail("IndexMismatch", "coefficient count differs from the boundary size");
  return H1Class(std::move(coeffs));
}

// sum over D of c(D) deg_D(f); any lift of c gives the same number
template <ValuedField F>
long pairing(const RationalFunction<F>& f, const H1Class& c, const Subdomain<F>& U) {
  require_invertible(f, U);
  if (c.size() != U.size()) fail("IndexMismatch", "class lives on another subdomain");
  long s = 0;
  for (std::size_t i = 0; i < U.size(); ++i)
    if (c[i]) s += c[i] * degree_in(f, U[i]);
  return s;
}

// the functions z - a_i with a_i in D_i and a pole in the last component
// pair to the identity against the generators D_0..D_(n-2)
template <ValuedField F>
std::vector<RationalFunction<F>> dual_family(const Subdomain<F>& U) {
  std::vector<RationalFunction<F>> out;
  if (U.size() < 2) return out;
  const F& K = U.field();
  const Disk<F>& last = U[U.size() - 1];
  for (std::size_t i = 0; i + 1 < U.size(); ++i) {
    ProjPoint<F> p = U[i].some_point(), q = last.some_point();
    typename RationalFunction<F>::Divisor d;
    if (!p.is_inf()) d.emplace_back(p.value(), 1);
    if (!q.is_inf()) d.emplace_back(q.value(), -1);
    out.push_back(RationalFunction<F>::make(K.one(), std::move(d)));
  }
  return out;
}

// ---------------------------------------------------------- pushforward

// Checks h(U) inside Y exactly.  For a finite hole E = D(c, e) of Y the
// function h - c must have no zeros on U and |h - c| >= base^(-e) at each
// Gauss point of the boundary of U (the minimum of |h - c| on U is attained
// there once h - c has no zeros).  For the hole at infinity h must have no
// poles on U and |h - a| <= base^e at those Gauss points.
template <ValuedField F>
void require_maps_into(const PolyFrac<F>& h, const Subdomain<F>& U, const Subdomain<F>& Y) {
  const F& K = U.field();
  if (U.size() == 0) {
    if (h.degree() > 0) fail("ImageNotInY", "non-constant map on P^1");
    if (!Y.contains(h.apply(ProjPoint<F>(K.zero())))) fail("ImageNotInY", "constant outside Y");
    return;
  }
  auto none_in_U = [&](const ProjPoint<F>& w) {
    int inside = 0;
    for (auto& D : U.boundary()) inside += preimage_count(h, w, D, false);
    return inside == h.degree();
  };
  for (std::size_t j = 0; j < Y.size(); ++j) {
    const Disk<F>& E = Y[j];
    std::string tag = "hole " + std::to_string(j);
    if (!E.through_infinity()) {
      if (!none_in_U(ProjPoint<F>(E.center()))) fail("ImageNotInY", tag + ": center hit on U");
      PolyFrac<F> g = h.minus(E.center());
      for (auto& D : U.boundary()) {
        auto [s, e] = D.gauss_point();
        if (g.gauss_exp(s, e) > E.radius_exp()) fail("ImageNotInY", tag + ": too close on U");
      }
    } else {
      if (!none_in_U(ProjPoint<F>::infinity())) fail("ImageNotInY", tag + ": pole on U");
      PolyFrac<F> g = h.minus(E.center());
      for (auto& D : U.boundary()) {
        auto [s, e] = D.gauss_point();
        if (g.gauss_exp(s, e) < -E.radius_exp()) fail("ImageNotInY", tag + ": too large on U");
      }
    }
  }
}

// H_1(h)(D) = sum over E != Y[0] of deg_D(j_E o h) E, where j_E sends a
// point of E to 0 and a point of Y[0] to infinity; deg_D(j_E o h) counts
// preimages of those two points inside D
template <ValuedField F>
H1Class h1_pushforward(const PolyFrac<F>& h, const Subdomain<F>& U, const Subdomain<F>& Y, const H1Class& c,
                       bool validate = true) {
  if (c.size() != U.size()) fail("IndexMismatch", "class lives on another subdomain");
  if (validate) require_maps_into(h, U, Y);
  std::vector<long> out(Y.size(), 0);
  if (Y.size() < 2) return H1Class(std::move(out));
  ProjPoint<F> base_pt = Y[0].some_point();
  for (std::size_t i = 0; i < U.size(); ++i) {
    if (!c[i]) continue;
    int at_base = preimage_count(h, base_pt, U[i], false);
    for (std::size_t j = 1; j < Y.size(); ++j) {
      int here = preimage_count(h, Y[j].some_point(), U[i], false);
      out[j] += c[i] * (here - at_base);
    }
  }
  return H1Class(std::move(out));
}

template <ValuedField F>
H1Class h1_pushforward(const RationalFunction<F>& h, const Subdomain<F>& U, const Subdomain<F>& Y,
                       const H1Class& c) {
  return h1_pushforward(h.expanded(), U, Y, c);
}

}  // namespace ultrak2

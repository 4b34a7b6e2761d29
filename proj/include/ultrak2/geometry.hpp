// Disks in P^1, connected rational subdomains, Moebius images of disks and
// sup norms read off at Gauss points.
#pragma once
#include <vector>

#include "ratfunc.hpp"

namespace ultrak2 {

enum class DiskKind { open, closed };

enum class DiskRelation { disjoint, first_inside, second_inside, equal, overlapping };

inline const char* to_string(DiskRelation r) {
  switch (r) {
    case DiskRelation::disjoint: return "disjoint";
    case DiskRelation::first_inside: return "d1_inside_d2";
    case DiskRelation::second_inside: return "d2_inside_d1";
    case DiskRelation::equal: return "equal";
    case DiskRelation::overlapping: return "overlapping";
  }
  return "?";
}

// A finite disk is {v(z - c) > e} (open) or {v(z - c) >= e} (closed), i.e.
// radius base^(-e).  A disk through infinity is {|z - a| > base^e} plus inf
// (open) or with >= (closed); the anchor a can be any point outside it.
template <ValuedField F>
class Disk {
public:
  using E = Elem<F>;

  static Disk finite(E center, ValExp e, DiskKind kind = DiskKind::open) {
    if (e.is_inf()) fail("BadRadius", "radius exponent must be finite");
    return Disk(false, std::move(center), std::move(e), kind);
  }
  // D(inf, base^(-e)) around the anchor
  static Disk at_infinity(ValExp e, DiskKind kind, E anchor) {
    if (e.is_inf()) fail("BadRadius", "radius exponent must be finite");
    return Disk(true, std::move(anchor), std::move(e), kind);
  }
  static Disk at_infinity(const F& K, ValExp e, DiskKind kind = DiskKind::open) {
    return at_infinity(std::move(e), kind, K.zero());
  }

  const F& field() const { return c_.field(); }
  bool through_infinity() const { return outer_; }
  bool is_open() const { return kind_ == DiskKind::open; }
  DiskKind kind() const { return kind_; }
  // center for a finite disk, anchor for one through infinity
  const E& center() const { return c_; }
  const ValExp& radius_exp() const { return e_; }
  ProjPoint<F> center_point() const { return outer_ ? ProjPoint<F>::infinity() : ProjPoint<F>(c_); }

  // Gauss point of the boundary circle, as (center, exponent)
  std::pair<E, ValExp> gauss_point() const { return {c_, outer_ ? -e_ : e_}; }

  // set complement in P^1
  Disk complement() const {
    DiskKind k = is_open() ? DiskKind::closed : DiskKind::open;
    return Disk(!outer_, c_, -e_, k);
  }

  bool contains(const E& z) const {
    if (outer_) return !complement().contains(z);
    ValExp v = (z - c_).valuation();
    return is_open() ? v > e_ : v >= e_;
  }
  bool contains(const ProjPoint<F>& z) const {
    if (z.is_inf()) return outer_;
    return contains(z.value());
  }

  // a point of the disk with coordinates in the base field
  ProjPoint<F> some_point() const { return center_point(); }

  friend bool operator==(const Disk& a, const Disk& b) { return relation(a, b) == DiskRelation::equal; }

  static DiskRelation relation(const Disk& a, const Disk& b) {
    if (!a.outer_ && !b.outer_) return finite_relation(a, b);
    if (a.outer_ && b.outer_) {
      // complements are finite; inclusion flips
      switch (finite_relation(a.complement(), b.complement())) {
        case DiskRelation::equal: return DiskRelation::equal;
        case DiskRelation::first_inside: return DiskRelation::second_inside;
        case DiskRelation::second_inside: return DiskRelation::first_inside;
        default: return DiskRelation::overlapping;
      }
    }
    bool swapped = a.outer_;
    const Disk& fin = swapped ? b : a;
    Disk hole = (swapped ? a : b).complement();
    // fin meets outer iff fin is not inside its complement
    DiskRelation r = finite_relation(fin, hole);
    DiskRelation out;
    if (r == DiskRelation::first_inside || r == DiskRelation::equal)
      out = DiskRelation::disjoint;
    else if (r == DiskRelation::disjoint)
      out = DiskRelation::first_inside;
    else
      out = DiskRelation::overlapping;
    if (swapped && out == DiskRelation::first_inside) out = DiskRelation::second_inside;
    return out;
  }

private:
  Disk(bool outer, E c, ValExp e, DiskKind k) : outer_(outer), c_(std::move(c)), e_(std::move(e)), kind_(k) {}

  // subset test for finite disks
  static bool finite_subset(const Disk& a, const Disk& b) {
    if (!b.contains(a.c_)) return false;
    if (a.e_ != b.e_) return a.e_ > b.e_;
    return !(b.is_open() && !a.is_open());
  }
  static DiskRelation finite_relation(const Disk& a, const Disk& b) {
    if (!b.contains(a.c_) && !a.contains(b.c_)) return DiskRelation::disjoint;
    bool ab = finite_subset(a, b), ba = finite_subset(b, a);
    if (ab && ba) return DiskRelation::equal;
    if (ab) return DiskRelation::first_inside;
    if (ba) return DiskRelation::second_inside;
    return DiskRelation::overlapping;
  }

  bool outer_;
  E c_;
  ValExp e_;
  DiskKind kind_;
};

// ------------------------------------------------------ Moebius images

namespace detail {

template <ValuedField F>
Disk<F> translate(const Disk<F>& D, const Elem<F>& s) {
  if (D.through_infinity()) return Disk<F>::at_infinity(D.radius_exp(), D.kind(), D.center() + s);
  return Disk<F>::finite(D.center() + s, D.radius_exp(), D.kind());
}

template <ValuedField F>
Disk<F> scale(const Disk<F>& D, const Elem<F>& s) {
  ValExp v = s.valuation();
  if (D.through_infinity()) return Disk<F>::at_infinity(D.radius_exp() - v, D.kind(), D.center() * s);
  return Disk<F>::finite(D.center() * s, D.radius_exp() + v, D.kind());
}

template <ValuedField F>
Disk<F> invert(const Disk<F>& D) {
  const F& K = D.field();
  if (D.through_infinity()) return invert(D.complement()).complement();
  if (!D.contains(K.zero())) {
    // |z| = |c| throughout D, so |1/z - 1/c| = |z - c| / |c|^2
    const auto& c = D.center();
    return Disk<F>::finite(c.inv(), D.radius_exp() - c.valuation() * mpq_class(2), D.kind());
  }
  return Disk<F>::at_infinity(D.radius_exp(), D.kind(), K.zero());
}

}  // namespace detail

template <ValuedField F>
Disk<F> mobius_disk(const Matrix2<F>& M, const Disk<F>& D) {
  M.require_invertible();
  if (M.c.is_zero()) {
    Disk<F> r = detail::scale(D, M.a / M.d);
    return detail::translate(r, M.b / M.d);
  }
  // a/c - det / (c (c z + d))
  Disk<F> r = detail::translate(detail::scale(D, M.c), M.d);
  r = detail::invert(r);
  r = detail::scale(r, -M.det() / M.c);
  return detail::translate(r, M.a / M.c);
}

// ------------------------------------------------------------ Subdomain

// complement in P^1 of finitely many pairwise disjoint open disks
template <ValuedField F>
class Subdomain {
public:
  using E = Elem<F>;

  Subdomain(const F& K, std::vector<Disk<F>> boundary) : K_(&K), disks_(std::move(boundary)) {
    for (std::size_t i = 0; i < disks_.size(); ++i) {
      if (!disks_[i].is_open()) fail("NotOpen", "boundary disk " + std::to_string(i) + " is closed");
      for (std::size_t j = 0; j < i; ++j)
        if (Disk<F>::relation(disks_[j], disks_[i]) != DiskRelation::disjoint)
          fail("NotDisjoint", "(" + std::to_string(j) + ", " + std::to_string(i) + ")");
    }
  }
  static Subdomain projective_line(const F& K) { return Subdomain(K, {}); }

  // {base^(-va) <= |z| <= base^(-vb)}, needs va >= vb
  static Subdomain annulus(const F& K, const ValExp& va, const ValExp& vb) {
    return Subdomain(K, {Disk<F>::finite(K.zero(), va), Disk<F>::at_infinity(K, -vb)});
  }
  // the complement of the residue disks of the points in S and of D(inf, 1)
  static Subdomain residue_complement(const F& K, const std::vector<GaloisField::elem>& S) {
    std::vector<Disk<F>> d;
    for (auto s : S) d.push_back(Disk<F>::finite(K.lift(s), ValExp(0)));
    d.push_back(Disk<F>::at_infinity(K, ValExp(0)));
    return Subdomain(K, std::move(d));
  }

  const F& field() const { return *K_; }
  const std::vector<Disk<F>>& boundary() const { return disks_; }
  std::size_t size() const { return disks_.size(); }
  const Disk<F>& operator[](std::size_t i) const { return disks_[i]; }

  bool contains(const ProjPoint<F>& z) const {
    for (auto& D : disks_)
      if (D.contains(z)) return false;
    return true;
  }
  bool contains(const E& z) const { return contains(ProjPoint<F>(z)); }

  std::size_t index_of(const Disk<F>& D) const {
    for (std::size_t i = 0; i < disks_.size(); ++i)
      if (disks_[i] == D) return i;
    fail("NotABoundaryComponent", "disk is not in the boundary");
  }
  // index of the boundary disk holding z, or size() if z lies in U
  std::size_t component_of(const ProjPoint<F>& z) const {
    for (std::size_t i = 0; i < disks_.size(); ++i)
      if (disks_[i].contains(z)) return i;
    return disks_.size();
  }

  Subdomain with_extra(std::vector<Disk<F>> more) const {
    std::vector<Disk<F>> d = disks_;
    d.insert(d.end(), more.begin(), more.end());
    return Subdomain(*K_, std::move(d));
  }

private:
  const F* K_;
  std::vector<Disk<F>> disks_;
};

// ---------------------------------------------------------------- norms

// exponent of |f| at the Gauss point of the closed disk of radius base^(-e)
// around s:  |z - a| there is max(|a - s|, base^(-e))
template <ValuedField F>
ValExp gauss_norm(const RationalFunction<F>& f, const Elem<F>& s, const ValExp& e) {
  ValExp r = f.constant().valuation();
  for (auto& [a, n] : f.divisor()) r = r + std::min((a - s).valuation(), e) * mpq_class(long(n));
  return r;
}

template <ValuedField F>
bool invertible_on(const RationalFunction<F>& f, const Subdomain<F>& U) {
  for (auto& [a, n] : f.divisor())
    if (U.contains(a)) return false;
  return f.ord_inf() == 0 || !U.contains(ProjPoint<F>::infinity());
}

template <ValuedField F>
void require_invertible(const RationalFunction<F>& f, const Subdomain<F>& U) {
  if (!invertible_on(f, U)) fail("FunctionNotInvertibleOnU", "divisor meets U");
}

// sup over U of |g| for g holomorphic on U, as an exponent (the minimum
// over the boundary Gauss points)
template <ValuedField F>
ValExp sup_exp(const PolyFrac<F>& g, const Subdomain<F>& U) {
  if (U.size() == 0) {
    // holomorphic on P^1: constant
    if (g.num().degree() > 0 || g.den().degree() > 0) fail("FunctionNotInvertibleOnU", "not constant on P^1");
    return g.num().is_zero() ? ValExp::infinity() : (g.num().lead() / g.den().lead()).valuation();
  }
  ValExp best = ValExp::infinity();
  for (auto& D : U.boundary()) {
    auto [s, e] = D.gauss_point();
    best = std::min(best, g.gauss_exp(s, e));
  }
  return best;
}

template <ValuedField F>
ValExp sup_norm(const RationalFunction<F>& f, const Subdomain<F>& U) {
  require_invertible(f, U);
  if (U.size() == 0) return f.constant().valuation();
  ValExp best = ValExp::infinity();
  for (auto& D : U.boundary()) {
    auto [s, e] = D.gauss_point();
    best = std::min(best, gauss_norm(f, s, e));
  }
  return best;
}

// ||1 - f||_U <= base^(-eps)
template <ValuedField F>
bool in_R_eps(const RationalFunction<F>& f, const Subdomain<F>& U, const ValExp& eps) {
  if (!invertible_on(f, U)) return false;
  if (f.is_constant()) return in_unit_ball(f.constant(), eps);
  if (U.size() == 0) return false;
  return sup_exp(f.expanded().one_minus(), U) >= eps;
}

// ------------------------------------------------------- Newton counts

// roots of P (finite, with multiplicity) inside D; with `strict`, an open
// finite disk with roots on its boundary circle is rejected
template <ValuedField F>
int newton_root_count(const Poly<F>& P, const Disk<F>& D, bool strict = false) {
  if (D.through_infinity()) {
    Disk<F> H = D.complement();
    NewtonCount nc = newton_counts(P, H.center(), H.radius_exp());
    if (strict && nc.boundary()) fail("BoundaryRoot", "root on the boundary circle");
    return P.degree() - (H.is_open() ? nc.open : nc.closed);
  }
  NewtonCount nc = newton_counts(P, D.center(), D.radius_exp());
  if (strict && D.is_open() && nc.boundary()) fail("BoundaryRoot", "root on the boundary circle");
  return D.is_open() ? nc.open : nc.closed;
}

// preimages of w under h (P^1 points, with multiplicity) lying in D
template <ValuedField F>
int preimage_count(const PolyFrac<F>& h, const ProjPoint<F>& w, const Disk<F>& D, bool strict = true) {
  Poly<F> P = w.is_inf() ? h.den() : h.num() - h.den().scaled(w.value());
  if (P.is_zero()) fail("ConstantMap", "map is constant at the target point");
  int n = newton_root_count(P, D, strict);
  if (D.through_infinity()) n += h.degree() - P.degree();
  return n;
}

}  // namespace ultrak2

// Holomorphic functions given as certified sequences of rational functions:
// regulators to a requested precision, Tate theta quotients and the
// truncated Carlitz exponential.
#pragma once
#include <functional>
#include <vector>

#include "k2reg.hpp"

namespace ultrak2 {

// f_n with ||1 - f_m / f_n||_U <= base^(-eps_n) for all m >= n
template <ValuedField F>
struct ApproxFunction {
  std::function<std::pair<RationalFunction<F>, ValExp>(int)> stage;
  int max_index = 64;

  // first index whose certificate reaches eps
  std::optional<int> index_for(const ValExp& eps) const {
    for (int n = 0; n <= max_index; ++n)
      if (stage(n).second >= eps) return n;
    return std::nullopt;
  }
  static ApproxFunction constant(RationalFunction<F> f) {
    return {[f](int) { return std::pair{f, ValExp::infinity()}; }, 0};
  }
};

template <ValuedField F>
struct CertifiedValue {
  Elem<F> value;
  ValExp rel_err;  // |1 - true / value| <= base^(-rel_err)
  int index;
};

// {f, g}_D from the first stages certified to delta.  The functions may
// have zeros and poles on U; the regulator is taken on U with small disks
// around them removed.
template <ValuedField F>
CertifiedValue<F> regulator_approx(const ApproxFunction<F>& f, const ApproxFunction<F>& g, const Subdomain<F>& U,
                                   const Disk<F>& D, const ValExp& delta) {
  auto nf = f.index_for(delta), ng = g.index_for(delta);
  if (!nf || !ng) fail("PrecisionUnreachable", "no stage certified to " + delta.str());
  int n = std::max(*nf, *ng);
  auto k = K2Element<F>::symbol(f.stage(n).first, g.stage(n).first);
  return {regulator_k2(k, U, D), delta, n};
}

// ‖1 - f / g‖ on U as an exponent
template <ValuedField F>
ValExp ratio_distance(const RationalFunction<F>& f, const RationalFunction<F>& g, const Subdomain<F>& U) {
  RationalFunction<F> r = f / g;
  if (r.is_constant()) return (f.field().one() - r.constant()).valuation();
  if (U.size() == 0) fail("FunctionNotInvertibleOnU", "nonconstant ratio on P^1");
  require_invertible(r, U);
  return sup_exp(r.expanded().one_minus(), U);
}

// ----------------------------------------------------------------- Tate

// valuation window lo <= v(z) <= hi of a working annulus
struct ValuationWindow {
  ValExp lo, hi;
};

template <ValuedField F>
RationalFunction<F> theta_truncation(const Elem<F>& a, const Elem<F>& t, int N) {
  if (a.is_zero()) fail("ZeroPoint", "theta needs a nonzero point");
  if (!(t.valuation() < ValExp(0))) fail("BadPeriod", "needs |t| > 1");
  const F& K = a.field();
  // zeros a t^n for |n| <= N, pole of order N at 0
  typename RationalFunction<F>::Divisor d;
  Elem<F> c = K.one(), tn = K.one();
  for (int n = 0; n <= N; ++n) {
    c *= -(a * tn).inv();
    d.emplace_back(a * tn, 1);
    if (n > 0) d.emplace_back(a * tn.inv(), 1);
    tn *= t;
  }
  if (N > 0) d.emplace_back(K.zero(), -N);
  return RationalFunction<F>::make(c, std::move(d));
}

// every dropped factor 1 - z/(a t^n), 1 - a/(z t^n) with n > N lies in
// U_eps on the window
template <ValuedField F>
ValExp theta_tail(const Elem<F>& a, const Elem<F>& t, int N, const ValuationWindow& w) {
  ValExp va = a.valuation(), step = t.valuation() * mpq_class(N + 1);
  return std::min(w.lo - va - step, va - w.hi - step);
}

// prod theta_a / prod theta_b
template <ValuedField F>
struct ThetaQuotient {
  std::vector<Elem<F>> num, den;
  Elem<F> t;

  RationalFunction<F> truncation(int N) const {
    RationalFunction<F> r = RationalFunction<F>::one(t.field());
    for (auto& a : num) r = r * theta_truncation<F>(a, t, N);
    for (auto& b : den) r = r / theta_truncation<F>(b, t, N);
    return r;
  }
  ValExp tail(int N, const ValuationWindow& w) const {
    ValExp e = ValExp::infinity();
    for (auto& a : num) e = std::min(e, theta_tail<F>(a, t, N, w));
    for (auto& b : den) e = std::min(e, theta_tail<F>(b, t, N, w));
    return e;
  }
  // equal counts and equal products: invariant under z -> t z
  bool periodic() const {
    if (num.size() != den.size()) return false;
    Elem<F> p = t.field().one();
    for (auto& a : num) p *= a;
    for (auto& b : den) p /= b;
    return p == t.field().one();
  }
  ApproxFunction<F> approx(const ValuationWindow& w, int max_N = 64) const {
    auto self = *this;
    return {[self, w](int n) { return std::pair{self.truncation(n), self.tail(n, w)}; }, max_N};
  }
};

template <ValuedField F>
struct TateReport {
  Elem<F> inner, outer, interior, product;  // the three factors and their product
  ValExp residual;                          // exponent of |product - 1|
  Elem<F> inner_shifted;                    // {f,g}_{D(0,|t|)} on the circle |z| = |t|
  ValExp agree_inner, agree_outer;          // exponents of |1 - ratio| for the two comparisons
  ValExp tail;                              // certificate of the truncation
  ValExp delta;
  bool pass;
};

// {f,g}_{D(0,1)} {f,g}_{D(inf,1/|t|)} prod_S {f,g}_s on the annulus
// 1 <= |z| <= |t|, plus the comparison of both boundary regulators with
// {f,g}_{D(0,|t|)} taken on the circle |z| = |t|
template <ValuedField F>
TateReport<F> tate_reciprocity_check(const ThetaQuotient<F>& f, const ThetaQuotient<F>& g, int N,
                                     const ValExp& delta) {
  const F& K = f.t.field();
  if (!(f.t == g.t)) fail("BadPeriod", "quotients use different periods");
  if (!f.periodic() || !g.periodic()) fail("NotPeriodic", "point multisets must have equal products");
  // points sit on |z| = 1 or |z| = |t| so the small disks around them are
  // separated from both boundary circles' neighbours
  for (auto* q : {&f, &g})
    for (auto* v : {&q->num, &q->den})
      for (auto& a : *v)
        if (!(a.valuation() == ValExp(0)) && !(a.valuation() == f.t.valuation()))
          fail("PointsNotSeparable", "point off the circles |z| = 1, |z| = |t|");
  ValExp vt = f.t.valuation();
  ValExp eps = std::min(f.tail(N, {vt, ValExp(0)}), g.tail(N, {vt, ValExp(0)}));
  if (eps < delta) fail("PrecisionUnreachable", "truncation too short for delta");
  auto fN = f.truncation(N), gN = g.truncation(N);
  auto k = K2Element<F>::symbol(fN, gN);

  Subdomain<F> A = Subdomain<F>::annulus(K, ValExp(0), vt);
  Elem<F> inner = regulator_k2(k, A, A[0]);
  Elem<F> outer = regulator_k2(k, A, A[1]);
  Elem<F> interior = K.one();
  for (auto& p : k.support())
    if (A.contains(p)) interior *= tame_symbol(k, ProjPoint<F>(p), K);
  Elem<F> product = inner * outer * interior;

  Subdomain<F> C = Subdomain<F>::annulus(K, vt, vt);
  Elem<F> shifted = regulator_k2(k, C, C[0]);
  ValExp a1 = (K.one() - inner / shifted).valuation();
  ValExp a2 = (K.one() - outer * shifted).valuation();
  ValExp two_delta = delta;  // |2| <= 1, so 2 delta is never tighter than delta
  ValExp res = (product - K.one()).valuation();
  bool pass = res >= delta && a1 >= two_delta && a2 >= two_delta;
  return {inner, outer, interior, product, res, shifted, a1, a2, eps, delta, pass};
}

// --------------------------------------------------------------- Carlitz

// z prod over nonzero lambda of degree <= N of (1 - z/lambda), i.e.
// c * prod over the F_q-span V_N of (z - lambda)
inline RationalFunction<FqtField> carlitz_truncation(const FqtField& K, int N) {
  typename RationalFunction<FqtField>::Divisor d;
  std::vector<FqtNumber> inv_roots;
  for (auto& P : K.polys_up_to_degree(N)) {
    FqtNumber lam = K.make(P);
    d.emplace_back(lam, 1);
    if (!lam.is_zero()) inv_roots.push_back(-lam.inv());
  }
  // balanced product keeps the intermediate degrees small
  while (inv_roots.size() > 1) {
    std::vector<FqtNumber> next;
    for (std::size_t i = 0; i + 1 < inv_roots.size(); i += 2) next.push_back(inv_roots[i] * inv_roots[i + 1]);
    if (inv_roots.size() % 2) next.push_back(inv_roots.back());
    inv_roots = std::move(next);
  }
  FqtNumber c = inv_roots.empty() ? K.one() : inv_roots.front();
  return RationalFunction<FqtField>::make(c, std::move(d));
}

// on |z| <= q^R each dropped factor has |z/lambda| <= q^(R - N - 1)
inline ApproxFunction<FqtField> carlitz_exp(const FqtField& K, long R, int max_N = 4) {
  return {[&K, R](int n) { return std::pair{carlitz_truncation(K, n), ValExp(n + 1 - R)}; }, max_N};
}

}  // namespace ultrak2

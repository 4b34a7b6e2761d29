// Tame symbols on P^1 and the regulator {f,g}_D of a boundary disk.
#pragma once
#include <map>
#include <set>
#include <vector>

#include "geometry.hpp"

namespace ultrak2 {

// (-1)^(mn) f^n / g^m at x, with m, n the orders of f and g there
template <ValuedField F>
Elem<F> tame_symbol(const RationalFunction<F>& f, const RationalFunction<F>& g, const ProjPoint<F>& x) {
  const F& K = f.field();
  int m = f.ord(x), n = g.ord(x);
  Elem<F> r = K.one();
  if (n != 0) r *= pow(f.order_and_lead(x).second, n);
  if (m != 0) r /= pow(g.order_and_lead(x).second, m);
  if ((long(m) * n) % 2 != 0) r = -r;
  return r;
}

// finite points where f or g has a zero or pole, sorted
template <ValuedField F>
std::vector<Elem<F>> joint_support(const RationalFunction<F>& f, const RationalFunction<F>& g) {
  std::set<Elem<F>> s;
  for (auto& [a, n] : f.divisor()) s.insert(a);
  for (auto& [a, n] : g.divisor()) s.insert(a);
  return {s.begin(), s.end()};
}

// product of every tame symbol on P^1; reciprocity says it is 1
template <ValuedField F>
Elem<F> weil_product(const RationalFunction<F>& f, const RationalFunction<F>& g) {
  Elem<F> r = tame_symbol(f, g, ProjPoint<F>::infinity());
  for (auto& x : joint_support(f, g)) r *= tame_symbol(f, g, ProjPoint<F>(x));
  return r;
}

// {f,g}_D for f, g invertible on U and D a boundary component of U
template <ValuedField F>
Elem<F> regulator(const RationalFunction<F>& f, const RationalFunction<F>& g, const Subdomain<F>& U,
                  const Disk<F>& D) {
  require_invertible(f, U);
  require_invertible(g, U);
  U.index_of(D);
  Elem<F> r = f.field().one();
  for (auto& x : joint_support(f, g))
    if (D.contains(x)) r *= tame_symbol(f, g, ProjPoint<F>(x));
  if (D.through_infinity()) r *= tame_symbol(f, g, ProjPoint<F>::infinity());
  return r;
}

// value v with |1 - v| <= base^(-eps)
template <ValuedField F>
struct UEpsWitness {
  Elem<F> value;
  ValExp eps;
  ValExp distance;  // exponent of |1 - value|
};

template <ValuedField F>
UEpsWitness<F> regulator_bound_check(const RationalFunction<F>& f, const RationalFunction<F>& g,
                                     const Subdomain<F>& U, const Disk<F>& D, const ValExp& eps) {
  if (!in_R_eps(f, U, eps)) fail("PreconditionFailed", "f is not in R_eps(U)");
  Elem<F> v = regulator(f, g, U, D);
  ValExp dist = (f.field().one() - v).valuation();
  if (dist < eps) fail("PartNormViolation", "regulator outside U_eps");
  return {v, eps, dist};
}

// f = constant * prod of parts, one part per boundary disk carrying the
// divisor of f inside that disk
template <ValuedField F>
struct Factorization {
  Elem<F> constant;
  std::vector<RationalFunction<F>> parts;  // indexed like U.boundary()
};

// A point outside D, used to normalize the part of D.  Choice 0 is the
// center (or anchor); choice k > 0 moves it by a power of the uniformizer
// that keeps it outside D.
template <ValuedField F>
Elem<F> balancing_point(const Disk<F>& D, int choice) {
  const F& K = D.field();
  Disk<F> H = D.complement();
  if (H.through_infinity()) fail("NoBalancingPoint", "disk has no finite complement");
  Elem<F> s = H.center();
  if (choice == 0) return s;
  // v(pi^k) must satisfy the complement's radius condition
  mpq_class e = H.radius_exp().exponent();
  mpz_class k = e.get_num() / e.get_den();
  if (mpq_class(k) < e || (H.is_open() && mpq_class(k) == e)) k += 1;
  k += choice - 1;
  Elem<F> step = pow(K.uniformizer(), k.get_si());
  Elem<F> out = s + step;
  if (!H.contains(out)) fail("NoBalancingPoint", "balancing point left the complement");
  return out;
}

template <ValuedField F>
Factorization<F> factorize(const RationalFunction<F>& f, const Subdomain<F>& U, const ValExp& eps,
                           int balance = 0) {
  if (!in_R_eps(f, U, eps)) fail("PreconditionFailed", "f is not in R_eps(U)");
  const F& K = f.field();
  std::vector<typename RationalFunction<F>::Divisor> split(U.size());
  for (auto& [a, n] : f.divisor()) split[U.component_of(ProjPoint<F>(a))].emplace_back(a, n);

  Factorization<F> out{K.one(), {}};
  RationalFunction<F> prod = RationalFunction<F>::one(K);
  for (std::size_t i = 0; i < U.size(); ++i) {
    const Disk<F>& D = U[i];
    RationalFunction<F> part = RationalFunction<F>::make(K.one(), split[i]);
    if (D.through_infinity()) {
      // normalize to 1 at a point outside D
      Elem<F> s = balancing_point(D, balance);
      part = part.scaled(part.evaluate(ProjPoint<F>(s)).inv());
    }
    // inner parts have degree 0, so prod (z - a)^n = prod ((z - a)/(z - s))^n
    Subdomain<F> outside(K, {D});
    if (!in_R_eps(part, outside, eps)) fail("PartNormViolation", "part " + std::to_string(i));
    prod = prod * part;
    out.parts.push_back(std::move(part));
  }
  RationalFunction<F> c = f / prod;
  if (!c.is_constant()) fail("PartNormViolation", "parts do not reassemble f");
  out.constant = c.constant();
  if (!in_unit_ball(out.constant, eps)) fail("PartNormViolation", "constant outside U_eps");
  return out;
}

}  // namespace ultrak2

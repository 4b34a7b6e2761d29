// Reduction of rational functions to the residue field: unit parts on
// U(S), the induced absolute value, and the generalized tame symbol with
// values in (residue rational functions)^* tensor Q.
#pragma once
#include <map>
#include <set>
#include <vector>

#include "k2reg.hpp"

namespace ultrak2 {

using ResidueSet = std::set<GaloisField::elem>;

template <ValuedField F>
Subdomain<F> residue_subdomain(const F& K, const ResidueSet& S) {
  return Subdomain<F>::residue_complement(K, std::vector<GaloisField::elem>(S.begin(), S.end()));
}

namespace detail {

// roots in F_q of a residue polynomial, by trying every element
inline std::vector<GaloisField::elem> residue_roots(const FqPoly& P) {
  std::vector<GaloisField::elem> r;
  if (P.degree() < 1) return r;
  for (GaloisField::elem x = 0; x < P.field().order(); ++x)
    if (P.eval(x) == 0) r.push_back(x);
  return r;
}

template <ValuedField F>
Elem<F> dominant_coeff(const Poly<F>& P) {
  std::optional<Elem<F>> best;
  for (auto& a : P.coeffs())
    if (!a.is_zero() && (!best || a.valuation() < best->valuation())) best = a;
  return *best;
}

template <ValuedField F>
FqPoly reduce(const Poly<F>& P) {
  const F& K = P.field();
  std::vector<GaloisField::elem> c;
  for (auto& a : P.coeffs()) c.push_back(K.residue(a));
  return FqPoly(K.residue_field(), std::move(c));
}

}  // namespace detail

template <ValuedField F>
struct UnitDecomposition {
  Elem<F> c;
  RationalFunction<F> unit;  // |unit| = 1 on U(S')
  FqPoly num_bar, den_bar;   // its reduction
  ResidueSet S;
};

// f = c * f0 with |f0| = 1 on U(S')
template <ValuedField F>
UnitDecomposition<F> unit_decompose(const RationalFunction<F>& f, const ResidueSet& S) {
  const F& K = f.field();
  PolyFrac<F> pf = f.expanded();
  Elem<F> cn = detail::dominant_coeff(pf.num()), cd = detail::dominant_coeff(pf.den());
  Elem<F> c = cn / cd;
  FqPoly nb = detail::reduce(pf.num().scaled(cn.inv())), db = detail::reduce(pf.den().scaled(cd.inv()));
  ResidueSet S2 = S;
  for (auto x : detail::residue_roots(nb)) S2.insert(x);
  for (auto x : detail::residue_roots(db)) S2.insert(x);
  RationalFunction<F> unit = f.scaled(c.inv());
  Subdomain<F> U = residue_subdomain(K, S2);
  if (!(sup_norm(unit, U) == ValExp(0)) || !(sup_norm(unit.inv(), U) == ValExp(0)))
    fail("UnitCheckFailed", "reduced part is not a unit on U(S')");
  return {c, unit, nb, db, S2};
}

// |f| in the induced absolute value, as an exponent
template <ValuedField F>
ValExp mero_abs(const RationalFunction<F>& f, const ResidueSet& S) {
  return unit_decompose(f, S).c.valuation();
}

// ----------------------------------------------------------- GTSValue

// monic residue polynomials with rational exponents, modulo constants; the
// bases are kept pairwise coprime so the representation of the neutral
// element is unique
class GTSValue {
public:
  GTSValue() = default;

  // base num/den (a nonzero residue rational function) to the power r
  static GTSValue power(const FqPoly& num, const FqPoly& den, const mpq_class& r) {
    GTSValue v;
    if (r == 0) return v;
    v.pending_.push_back({num.monic(), r});
    v.pending_.push_back({den.monic(), -r});
    v.refine();
    return v;
  }

  friend GTSValue operator*(const GTSValue& a, const GTSValue& b) {
    GTSValue v;
    for (auto& [p, r] : a.terms_) v.pending_.push_back({p, r});
    for (auto& [p, r] : b.terms_) v.pending_.push_back({p, r});
    v.refine();
    return v;
  }
  GTSValue inv() const { return scaled(-1); }
  GTSValue scaled(const mpq_class& s) const {
    GTSValue v;
    if (s == 0) return v;
    for (auto& [p, r] : terms_) v.terms_.emplace_back(p, mpq_class(r * s));
    return v;
  }
  bool is_neutral() const { return terms_.empty(); }
  friend bool operator==(const GTSValue& a, const GTSValue& b) { return (a * b.inv()).is_neutral(); }

  const std::vector<std::pair<FqPoly, mpq_class>>& terms() const { return terms_; }

  // sum of exponent * ord_s(base)
  mpq_class ord_at(GaloisField::elem s) const {
    mpq_class t = 0;
    for (auto& [p, r] : terms_) t += r * p.ord_at(s);
    return t;
  }

private:
  struct Item {
    FqPoly p;
    mpq_class r;
  };

  // split every base over a common coprime basis and collect exponents
  void refine() {
    std::vector<FqPoly> basis;
    for (auto& it : pending_)
      if (it.p.degree() > 0) basis.push_back(it.p);
    for (auto& [p, r] : terms_) basis.push_back(p);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < basis.size() && !changed; ++i)
        for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
          if (basis[i] == basis[j]) {
            basis.erase(basis.begin() + j);
            changed = true;
            break;
          }
          FqPoly g = gcd(basis[i], basis[j]).monic();
          if (g.degree() < 1) continue;
          FqPoly a = (basis[i] / g).monic(), b = (basis[j] / g).monic();
          basis.erase(basis.begin() + j);
          basis.erase(basis.begin() + i);
          basis.push_back(g);
          if (a.degree() > 0) basis.push_back(a);
          if (b.degree() > 0) basis.push_back(b);
          changed = true;
        }
    }
    std::sort(basis.begin(), basis.end());
    std::vector<mpq_class> ex(basis.size(), 0);
    auto spread = [&](FqPoly p, const mpq_class& r) {
      for (std::size_t k = 0; k < basis.size() && p.degree() > 0; ++k) {
        while (p.degree() > 0) {
          auto [q, rem] = divmod(p, basis[k]);
          if (!rem.is_zero()) break;
          p = q;
          ex[k] += r;
        }
      }
    };
    for (auto& it : pending_) spread(it.p, it.r);
    for (auto& [p, r] : terms_) spread(p, r);
    pending_.clear();
    terms_.clear();
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (ex[k] != 0) terms_.emplace_back(basis[k], ex[k]);
  }

  std::vector<Item> pending_;
  std::vector<std::pair<FqPoly, mpq_class>> terms_;
};

// valuation of x scaled so that the uniformizer has valuation `scale`
template <ValuedField F>
mpq_class normalized_valuation(const Elem<F>& x, const mpq_class& scale = 1) {
  return x.valuation().exponent() / x.field().uniformizer().valuation().exponent() * scale;
}

// T(f x g) = (-1)^(nu(f)nu(g)) fbar0^nu(g) gbar0^(-nu(f)); the sign and
// residue constants are torsion and disappear
template <ValuedField F>
GTSValue gts(const RationalFunction<F>& f, const RationalFunction<F>& g, const ResidueSet& S,
             const mpq_class& scale = 1) {
  auto df = unit_decompose(f, S);
  auto dg = unit_decompose(g, df.S);
  mpq_class nf = normalized_valuation<F>(df.c, scale), ng = normalized_valuation<F>(dg.c, scale);
  return GTSValue::power(df.num_bar, df.den_bar, ng) * GTSValue::power(dg.num_bar, dg.den_bar, -nf);
}

template <ValuedField F>
GTSValue gts(const K2Element<F>& k, const ResidueSet& S, const mpq_class& scale = 1) {
  GTSValue v;
  for (auto& t : k.terms()) v = v * gts(t.f, t.g, S, scale).scaled(t.e);
  return v;
}

inline mpq_class gts_at(const GTSValue& T, GaloisField::elem s, const ResidueSet& S) {
  if (!S.count(s)) fail("PointNotInS", std::to_string(s));
  return T.ord_at(s);
}

// orientation between the regulator valuation and T_s
inline constexpr int gts_orientation = -1;

template <ValuedField F>
struct GtsReport {
  mpq_class reg_valuation;  // nu({k}_{D(s^,1)})
  mpq_class t_s;            // T_s(k)
  ResidueSet S;
  bool pass;
};

template <ValuedField F>
GtsReport<F> gts_check(const K2Element<F>& k, GaloisField::elem s, const ResidueSet& S, const F& K,
                       const mpq_class& scale = 1) {
  ResidueSet S2 = S;
  S2.insert(s);
  // enlarge until every function is a unit times a constant on U(S2)
  for (auto& t : k.terms()) {
    S2 = unit_decompose(t.f, S2).S;
    S2 = unit_decompose(t.g, S2).S;
  }
  Subdomain<F> U = residue_subdomain(K, S2);
  Disk<F> D = Disk<F>::finite(K.lift(s), ValExp(0));
  Elem<F> reg = regulator_k2(k, U, D);
  mpq_class nu = normalized_valuation<F>(reg, scale);
  mpq_class ts = gts_at(gts(k, S2, scale), s, S2);
  return {nu, ts, S2, nu == gts_orientation * ts};
}

}  // namespace ultrak2

// Rational functions on P^1 kept as c * prod (z - a)^n, plus expanded
// polynomial forms for norms and Newton polygons.
#pragma once
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "valued_field.hpp"

namespace ultrak2 {

template <ValuedField F>
using Elem = typename F::element;

// point of P^1 over the base field
template <ValuedField F>
class ProjPoint {
public:
  ProjPoint(Elem<F> x) : x_(std::move(x)) {}
  static ProjPoint infinity() { return ProjPoint(); }

  bool is_inf() const { return !x_.has_value(); }
  const Elem<F>& value() const {
    if (!x_) fail("PointAtInfinity", "no finite coordinate");
    return *x_;
  }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x_ == b.x_; }
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
    if (a.is_inf() || b.is_inf()) return int(a.is_inf()) <=> int(b.is_inf());
    return *a.x_ <=> *b.x_;
  }

private:
  ProjPoint() = default;
  std::optional<Elem<F>> x_;
};

// --------------------------------------------------------------- Poly

template <ValuedField F>
class Poly {
public:
  using E = Elem<F>;

  explicit Poly(const F& K) : K_(&K) {}
  Poly(const F& K, std::vector<E> c) : K_(&K), c_(std::move(c)) { trim(); }
  static Poly constant(const E& a) { return Poly(a.field(), {a}); }
  // z - a
  static Poly linear(const E& a) { return Poly(a.field(), {-a, a.field().one()}); }

  const F& field() const { return *K_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<E>& coeffs() const { return c_; }
  E coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K_->zero(); }
  E lead() const { return c_.empty() ? K_->zero() : c_.back(); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<E> r;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(a.coeff(i) + b.coeff(i));
    return Poly(*a.K_, std::move(r));
  }
  Poly operator-() const {
    std::vector<E> r;
    r.reserve(c_.size());
    for (auto& x : c_) r.push_back(-x);
    return Poly(*K_, std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(*a.K_);
    std::vector<E> r(a.c_.size() + b.c_.size() - 1, a.K_->zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(*a.K_, std::move(r));
  }
  Poly scaled(const E& s) const {
    std::vector<E> r;
    r.reserve(c_.size());
    for (auto& x : c_) r.push_back(x * s);
    return Poly(*K_, std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  E eval(const E& x) const {
    E r = K_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  // P(z + s)
  Poly shifted(const E& s) const {
    if (s.is_zero()) return *this;
    std::vector<E> r = c_;
    std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) r[j - 1] += s * r[j];
    return Poly(*K_, std::move(r));
  }

  // P(M z) * (c z + d)^deg for M = [[a,b],[c,d]], degree n padding given
  Poly mobius_homogenized(const E& a, const E& b, const E& c, const E& d, int n) const {
    Poly num(*K_, {b, a}), den(*K_, {d, c});
    std::vector<Poly> num_pow{Poly::constant(K_->one())}, den_pow{Poly::constant(K_->one())};
    for (int i = 0; i < n; ++i) {
      num_pow.push_back(num_pow.back() * num);
      den_pow.push_back(den_pow.back() * den);
    }
    Poly r(*K_);
    for (std::size_t i = 0; i < c_.size(); ++i)
      r = r + (num_pow[i] * den_pow[n - i]).scaled(c_[i]);
    return r;
  }

  // exponent of the Gauss norm on the closed disk of radius base^(-e) at s
  ValExp gauss_exp(const E& s, const ValExp& e) const {
    Poly P = shifted(s);
    ValExp best = ValExp::infinity();
    for (std::size_t k = 0; k < P.c_.size(); ++k) {
      if (P.c_[k].is_zero()) continue;
      ValExp v = P.c_[k].valuation() + e * mpq_class(long(k));
      best = std::min(best, v);
    }
    return best;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  const F* K_;
  std::vector<E> c_;
};

// Roots of P, with multiplicity, at valuation distance > e from s (or >= e
// when `closed`).  Read off the Newton polygon of P(z+s): the first and last
// indices minimizing v(a_k) + k*e.  Both counts are exact; the gap between
// them is the number of roots on the circle |z - s| = base^(-e).
struct NewtonCount {
  int open = 0;
  int closed = 0;
  bool boundary() const { return open != closed; }
};

template <ValuedField F>
NewtonCount newton_counts(const Poly<F>& P, const Elem<F>& s, const ValExp& e) {
  if (P.is_zero()) fail("ZeroPolynomial", "root count of the zero polynomial");
  Poly<F> Q = P.shifted(s);
  ValExp best = ValExp::infinity();
  int first = -1, last = -1;
  for (int k = 0; k <= Q.degree(); ++k) {
    Elem<F> a = Q.coeff(k);
    if (a.is_zero()) continue;
    ValExp v = a.valuation() + e * mpq_class(long(k));
    if (v < best) {
      best = v;
      first = last = k;
    } else if (v == best) {
      last = k;
    }
  }
  return {first, last};
}

// ------------------------------------------------------------- Matrix2

template <ValuedField F>
struct Matrix2 {
  using E = Elem<F>;
  E a, b, c, d;

  static Matrix2 identity(const F& K) { return {K.one(), K.zero(), K.zero(), K.one()}; }
  static Matrix2 translation(const E& s) { return {s.field().one(), s, s.field().zero(), s.field().one()}; }
  static Matrix2 scaling(const E& s) { return {s, s.field().zero(), s.field().zero(), s.field().one()}; }
  static Matrix2 inversion(const F& K) { return {K.zero(), K.one(), K.one(), K.zero()}; }

  E det() const { return a * d - b * c; }
  void require_invertible() const {
    if (det().is_zero()) fail("SingularMatrix", "determinant is 0");
  }
  Matrix2 inverse() const {
    require_invertible();
    return {d, -b, -c, a};
  }
  friend Matrix2 operator*(const Matrix2& m, const Matrix2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }

  ProjPoint<F> apply(const ProjPoint<F>& z) const {
    if (z.is_inf()) {
      if (c.is_zero()) return ProjPoint<F>::infinity();
      return ProjPoint<F>(a / c);
    }
    E den = c * z.value() + d;
    if (den.is_zero()) return ProjPoint<F>::infinity();
    return ProjPoint<F>((a * z.value() + b) / den);
  }
};

// ---------------------------------------------------- RationalFunction

template <ValuedField F>
class PolyFrac;

template <ValuedField F>
class RationalFunction {
public:
  using E = Elem<F>;
  using Divisor = std::vector<std::pair<E, int>>;

  // constant * prod (z - root)^mult; roots must be distinct
  static RationalFunction make(const E& constant, Divisor divisor) {
    if (constant.is_zero()) fail("ZeroConstant", "constant must be nonzero");
    std::sort(divisor.begin(), divisor.end(), [](auto& x, auto& y) { return x.first < y.first; });
    for (std::size_t i = 1; i < divisor.size(); ++i)
      if (divisor[i].first == divisor[i - 1].first) fail("DuplicateRoot", to_string(divisor[i].first));
    Divisor kept;
    for (auto& [a, n] : divisor)
      if (n != 0) kept.emplace_back(a, n);
    return RationalFunction(constant, std::move(kept));
  }
  static RationalFunction constant_fn(const E& c) { return make(c, {}); }
  static RationalFunction one(const F& K) { return make(K.one(), {}); }
  // z - a
  static RationalFunction linear(const E& a) { return make(a.field().one(), {{a, 1}}); }
  static RationalFunction z(const F& K) { return linear(K.zero()); }

  const F& field() const { return constant_.field(); }
  const E& constant() const { return constant_; }
  const Divisor& divisor() const { return div_; }
  bool is_constant() const { return div_.empty(); }

  int ord_inf() const {
    int s = 0;
    for (auto& [a, n] : div_) s -= n;
    return s;
  }
  int ord(const ProjPoint<F>& x) const {
    if (x.is_inf()) return ord_inf();
    auto it = find(x.value());
    return it == div_.end() ? 0 : it->second;
  }

  // multiplicity and leading Laurent coefficient at x (1/z coordinate at inf)
  std::pair<int, E> order_and_lead(const ProjPoint<F>& x) const {
    if (x.is_inf()) return {ord_inf(), constant_};
    return {ord(x), lead_at(x.value())};
  }
  // (f / (z - x)^m)(x)
  E lead_at(const E& x) const {
    E r = constant_;
    for (auto& [a, n] : div_)
      if (!(a == x)) r *= ultrak2::pow(x - a, n);
    return r;
  }

  E evaluate(const ProjPoint<F>& x) const {
    int m = ord(x);
    if (m != 0) fail("ZeroOrPole", "order " + std::to_string(m));
    return order_and_lead(x).second;
  }
  E operator()(const E& x) const { return evaluate(ProjPoint<F>(x)); }

  friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
    std::map<E, int> m;
    for (auto& [a, n] : f.div_) m[a] += n;
    for (auto& [a, n] : g.div_) m[a] += n;
    Divisor d;
    for (auto& [a, n] : m)
      if (n) d.emplace_back(a, n);
    return RationalFunction(f.constant_ * g.constant_, std::move(d));
  }
  RationalFunction inv() const {
    Divisor d = div_;
    for (auto& [a, n] : d) n = -n;
    return RationalFunction(constant_.inv(), std::move(d));
  }
  friend RationalFunction operator/(const RationalFunction& f, const RationalFunction& g) { return f * g.inv(); }
  RationalFunction pow(int k) const {
    if (k == 0) return one(field());
    Divisor d = div_;
    for (auto& [a, n] : d) n *= k;
    return RationalFunction(ultrak2::pow(constant_, k), std::move(d));
  }
  RationalFunction scaled(const E& s) const { return RationalFunction(constant_ * s, div_); }

  friend bool operator==(const RationalFunction& f, const RationalFunction& g) {
    return f.constant_ == g.constant_ && f.div_ == g.div_;
  }

  // f((a z + b)/(c z + d)); the divisor moves through M^-1
  RationalFunction compose_mobius(const Matrix2<F>& M) const {
    M.require_invertible();
    const F& K = field();
    E c = constant_;
    std::map<E, int> m;
    int poles_needed = 0;  // exponent of (c z + d) in the denominator
    for (auto& [alpha, n] : div_) {
      // M z - alpha = ((a - alpha c) z + (b - alpha d)) / (c z + d)
      E lin = M.a - alpha * M.c, cst = M.b - alpha * M.d;
      if (lin.is_zero()) {
        c *= ultrak2::pow(cst, n);
      } else {
        c *= ultrak2::pow(lin, n);
        m[-cst / lin] += n;
      }
      poles_needed += n;
    }
    if (poles_needed != 0) {
      if (M.c.is_zero()) {
        c *= ultrak2::pow(M.d, -poles_needed);
      } else {
        c *= ultrak2::pow(M.c, -poles_needed);
        m[-M.d / M.c] -= poles_needed;
      }
    }
    Divisor d;
    for (auto& [a, n] : m)
      if (n) d.emplace_back(a, n);
    (void)K;
    return RationalFunction(c, std::move(d));
  }

  // numerator constant*prod over zeros, denominator prod over poles
  PolyFrac<F> expanded() const;

  // every finite point of the divisor
  std::vector<E> support() const {
    std::vector<E> s;
    for (auto& [a, n] : div_) s.push_back(a);
    return s;
  }

private:
  RationalFunction(E c, Divisor d) : constant_(std::move(c)), div_(std::move(d)) {}
  typename Divisor::const_iterator find(const E& x) const {
    auto it = std::lower_bound(div_.begin(), div_.end(), x, [](auto& p, const E& v) { return p.first < v; });
    if (it != div_.end() && it->first == x) return it;
    return div_.end();
  }
  E constant_;
  Divisor div_;
};

// num/den not necessarily reduced; the working form for 1 - f, h - c, ...
template <ValuedField F>
class PolyFrac {
public:
  using E = Elem<F>;
  PolyFrac(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail("DivisionByZero", "zero denominator");
  }
  static PolyFrac from(const RationalFunction<F>& f) { return f.expanded(); }

  const Poly<F>& num() const { return num_; }
  const Poly<F>& den() const { return den_; }
  const F& field() const { return den_.field(); }
  // max(deg num, deg den): number of preimages of any point
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  friend PolyFrac operator+(const PolyFrac& f, const PolyFrac& g) {
    if (f.den_ == g.den_) return {f.num_ + g.num_, f.den_};
    return {f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_};
  }
  friend PolyFrac operator-(const PolyFrac& f, const PolyFrac& g) { return f + PolyFrac(-g.num_, g.den_); }
  friend PolyFrac operator*(const PolyFrac& f, const PolyFrac& g) { return {f.num_ * g.num_, f.den_ * g.den_}; }
  static PolyFrac constant(const E& c) { return {Poly<F>::constant(c), Poly<F>::constant(c.field().one())}; }
  PolyFrac one_minus() const { return {den_ - num_, den_}; }
  // this - c
  PolyFrac minus(const E& c) const { return {num_ - den_.scaled(c), den_}; }

  ValExp gauss_exp(const E& s, const ValExp& e) const { return num_.gauss_exp(s, e) - den_.gauss_exp(s, e); }

  E eval(const E& x) const {
    E d = den_.eval(x);
    if (d.is_zero()) fail("ZeroOrPole", "pole");
    return num_.eval(x) / d;
  }
  ProjPoint<F> apply(const ProjPoint<F>& x) const {
    if (x.is_inf()) {
      if (num_.degree() > den_.degree()) return ProjPoint<F>::infinity();
      if (num_.degree() < den_.degree()) return ProjPoint<F>(field().zero());
      return ProjPoint<F>(num_.lead() / den_.lead());
    }
    E d = den_.eval(x.value());
    if (d.is_zero()) return ProjPoint<F>::infinity();
    return ProjPoint<F>(num_.eval(x.value()) / d);
  }

  // f(g(z)) for a rational g given in the same form
  PolyFrac compose(const PolyFrac& g) const {
    int n = degree();
    std::vector<Poly<F>> gn{Poly<F>::constant(field().one())}, gd{Poly<F>::constant(field().one())};
    for (int i = 0; i < n; ++i) {
      gn.push_back(gn.back() * g.num_);
      gd.push_back(gd.back() * g.den_);
    }
    auto homog = [&](const Poly<F>& P) {
      Poly<F> r(field());
      for (int i = 0; i <= P.degree(); ++i) r = r + (gn[i] * gd[n - i]).scaled(P.coeff(i));
      return r;
    };
    return {homog(num_), homog(den_)};
  }

private:
  Poly<F> num_, den_;
};

template <ValuedField F>
PolyFrac<F> RationalFunction<F>::expanded() const {
  const F& K = field();
  std::vector<Poly<F>> up, down;
  for (auto& [a, n] : div_) {
    Poly<F> lin = Poly<F>::linear(a);
    for (int i = 0; i < std::abs(n); ++i) (n > 0 ? up : down).push_back(lin);
  }
  auto prod = [&](std::vector<Poly<F>> v) {
    Poly<F> r = Poly<F>::constant(K.one());
    while (v.size() > 1) {
      std::vector<Poly<F>> next;
      for (std::size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(v[i] * v[i + 1]);
      if (v.size() % 2) next.push_back(v.back());
      v = std::move(next);
    }
    if (!v.empty()) r = v.front();
    return r;
  };
  return {prod(std::move(up)).scaled(constant_), prod(std::move(down))};
}


// ---------------------------------------------------------- RationalMap

// h = stage_k o ... o stage_1 with Moebius and z^n stages; preimages of a
// point can then be solved stage by stage
template <ValuedField F>
class RationalMap {
public:
  using E = Elem<F>;
  using Stage = std::variant<Matrix2<F>, int>;

  explicit RationalMap(const F& K) : K_(&K) {}
  static RationalMap mobius(const Matrix2<F>& M) {
    M.require_invertible();
    RationalMap h(M.a.field());
    h.stages_.push_back(M);
    return h;
  }
  static RationalMap power(const F& K, int n) {
    if (n < 1) fail("BadExponent", "power stage needs n >= 1");
    RationalMap h(K);
    h.stages_.push_back(n);
    return h;
  }
  // first this, then g
  RationalMap then(const RationalMap& g) const {
    RationalMap h = *this;
    h.stages_.insert(h.stages_.end(), g.stages_.begin(), g.stages_.end());
    return h;
  }

  const F& field() const { return *K_; }
  const std::vector<Stage>& stages() const { return stages_; }
  int degree() const {
    int d = 1;
    for (auto& s : stages_)
      if (auto* n = std::get_if<int>(&s)) d *= *n;
    return d;
  }
  // the single matrix of a degree one map
  Matrix2<F> as_matrix() const {
    if (degree() != 1) fail("NotMoebius", "map has degree " + std::to_string(degree()));
    Matrix2<F> M = Matrix2<F>::identity(*K_);
    for (auto& s : stages_)
      if (auto* A = std::get_if<Matrix2<F>>(&s)) M = *A * M;
    return M;
  }

  ProjPoint<F> apply(ProjPoint<F> z) const {
    for (auto& s : stages_) {
      if (auto* M = std::get_if<Matrix2<F>>(&s)) {
        z = M->apply(z);
      } else if (!z.is_inf()) {
        z = ProjPoint<F>(pow(z.value(), std::get<int>(s)));
      }
    }
    return z;
  }

  PolyFrac<F> as_polyfrac() const {
    Poly<F> P(*K_, {K_->zero(), K_->one()}), Q = Poly<F>::constant(K_->one());
    for (auto& s : stages_) {
      if (auto* M = std::get_if<Matrix2<F>>(&s)) {
        Poly<F> P2 = P.scaled(M->a) + Q.scaled(M->b), Q2 = P.scaled(M->c) + Q.scaled(M->d);
        P = std::move(P2);
        Q = std::move(Q2);
      } else {
        Poly<F> P2 = Poly<F>::constant(K_->one()), Q2 = P2;
        for (int i = 0; i < std::get<int>(s); ++i) {
          P2 = P2 * P;
          Q2 = Q2 * Q;
        }
        P = std::move(P2);
        Q = std::move(Q2);
      }
    }
    return {P, Q};
  }

  // points z with h(z) = w, with multiplicity
  std::vector<std::pair<ProjPoint<F>, int>> preimages(const ProjPoint<F>& w) const {
    std::vector<std::pair<ProjPoint<F>, int>> cur{{w, 1}};
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) {
      std::vector<std::pair<ProjPoint<F>, int>> next;
      for (auto& [x, m] : cur) {
        if (auto* M = std::get_if<Matrix2<F>>(&*it)) {
          next.emplace_back(M->inverse().apply(x), m);
          continue;
        }
        int n = std::get<int>(*it);
        if (x.is_inf() || x.value().is_zero()) {
          next.emplace_back(x, m * n);
          continue;
        }
        auto r = K_->nth_root(x.value(), static_cast<unsigned>(n));
        auto zeta = K_->roots_of_unity(static_cast<unsigned>(n));
        if (!r || zeta.size() < static_cast<std::size_t>(n))
          fail("PreimageNotSplit", "no " + std::to_string(n) + "-th roots of " + to_string(x.value()));
        for (auto& u : zeta) next.emplace_back(ProjPoint<F>(*r * u), m);
      }
      cur = std::move(next);
    }
    return cur;
  }

  // f o h in factored form
  RationalFunction<F> pullback(const RationalFunction<F>& f) const {
    std::map<E, int> div;
    auto add = [&](const ProjPoint<F>& w, int n) {
      if (n == 0) return;
      for (auto& [x, m] : preimages(w))
        if (!x.is_inf()) div[x.value()] += n * m;
    };
    for (auto& [a, n] : f.divisor()) add(ProjPoint<F>(a), n);
    add(ProjPoint<F>::infinity(), f.ord_inf());
    typename RationalFunction<F>::Divisor d;
    for (auto& [x, n] : div)
      if (n) d.emplace_back(x, n);
    RationalFunction<F> shape = RationalFunction<F>::make(K_->one(), d);
    // fix the constant at a point where everything is finite and nonzero
    for (int j = 0; j < 24; ++j) {
      for (int k = 0; k < 24; ++k) {
        E z0 = K_->from_int(k) + pow(K_->uniformizer(), -j);
        if (shape.ord(ProjPoint<F>(z0)) != 0) continue;
        ProjPoint<F> w = apply(ProjPoint<F>(z0));
        if (f.ord(w) != 0) continue;
        E c = f.evaluate(w) / shape(z0);
        return shape.scaled(c);
      }
    }
    fail("NoSamplePoint", "could not fix the constant of a pullback");
  }

private:
  const F* K_;
  std::vector<Stage> stages_;
};

}  // namespace ultrak2

// Exact ultrametric fields: Q with the p-adic valuation, and F_q(t) valued
// at infinity (so |t| = q).  Absolute values are kept as exponents over
// the field's base, |x| = base^(-e).
#pragma once
#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace ultrak2 {

// ---------------------------------------------------------------- ValExp

class ValExp {
public:
  ValExp() = default;
  ValExp(long e) : e_(e) {}
  ValExp(mpq_class e) : e_(std::move(e)) { e_.canonicalize(); }

  static ValExp infinity() {
    ValExp v;
    v.inf_ = true;
    return v;
  }

  bool is_inf() const { return inf_; }
  const mpq_class& exponent() const {
    if (inf_) fail("InfiniteExponent", "valuation of zero has no exponent");
    return e_;
  }
  bool is_integer() const { return !inf_ && e_.get_den() == 1; }
  long to_long() const { return exponent().get_num().get_si(); }

  friend ValExp operator+(const ValExp& a, const ValExp& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ValExp(mpq_class(a.e_ + b.e_));
  }
  friend ValExp operator-(const ValExp& a, const ValExp& b) {
    if (b.inf_) fail("InfiniteExponent", "cannot subtract an infinite exponent");
    if (a.inf_) return infinity();
    return ValExp(mpq_class(a.e_ - b.e_));
  }
  ValExp operator-() const {
    if (inf_) fail("InfiniteExponent", "cannot negate an infinite exponent");
    return ValExp(mpq_class(-e_));
  }
  friend ValExp operator*(const ValExp& a, const mpq_class& s) {
    if (a.inf_) return s == 0 ? ValExp() : infinity();
    return ValExp(mpq_class(a.e_ * s));
  }

  friend bool operator==(const ValExp& a, const ValExp& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.e_ == b.e_;
  }
  friend std::strong_ordering operator<=>(const ValExp& a, const ValExp& b) {
    if (a.inf_ || b.inf_) return int(a.inf_) <=> int(b.inf_);
    int c = cmp(a.e_, b.e_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

  std::string str() const {
    if (inf_) return "inf";
    if (e_.get_den() == 1) return e_.get_num().get_str();
    return e_.get_str();
  }

  static ValExp parse(std::string_view s) {
    std::string t;
    for (char c : s)
      if (c != ' ' && c != '\t') t.push_back(c);
    if (t == "inf" || t == "+inf") return infinity();
    mpq_class q;
    if (t.empty() || q.set_str(t, 10) != 0)
      throw ParseError("SyntaxError", 0, "bad exponent '" + std::string(s) + "'");
    if (q.get_den() == 0) throw ParseError("SyntaxError", 0, "zero denominator");
    q.canonicalize();
    return ValExp(q);
  }

private:
  bool inf_ = false;
  mpq_class e_ = 0;
};

// size comparisons phrased on absolute values rather than exponents
inline bool abs_le(const ValExp& a, const ValExp& b) { return a >= b; }
inline bool abs_lt(const ValExp& a, const ValExp& b) { return a > b; }
inline ValExp abs_max(const ValExp& a, const ValExp& b) { return std::min(a, b); }

// ----------------------------------------------------------- GF(q)

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// q = p^k with p prime, or nullopt
inline std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p) ++p;
  std::uint32_t k = 0;
  std::uint64_t r = q;
  while (r % p == 0) r /= p, ++k;
  if (r != 1) return std::nullopt;
  return std::pair{std::uint32_t(p), k};
}

template <class T>
class Interned {
public:
  template <class Make>
  const T& get(std::uint64_t key, Make make) {
    std::lock_guard lock(m_);
    auto it = items_.find(key);
    if (it == items_.end()) it = items_.emplace(key, make()).first;
    return *it->second;
  }

private:
  std::mutex m_;
  std::map<std::uint64_t, std::unique_ptr<T>> items_;
};

}  // namespace detail

// Finite field with q <= 2^16 elements.  An element is its integer code:
// base-p digits are the coefficients over F_p of a polynomial basis.
class GaloisField {
public:
  using elem = std::uint32_t;

  static const GaloisField& get(std::uint64_t q) {
    static detail::Interned<GaloisField> pool;
    return pool.get(q, [q] { return std::unique_ptr<GaloisField>(new GaloisField(q)); });
  }

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }

  elem add(elem a, elem b) const {
    if (k_ == 1) return (a + b) % p_;
    elem r = 0, w = 1;
    for (std::uint32_t i = 0; i < k_; ++i, a /= p_, b /= p_, w *= p_)
      r += ((a % p_ + b % p_) % p_) * w;
    return r;
  }
  elem neg(elem a) const {
    if (k_ == 1) return (p_ - a) % p_;
    elem r = 0, w = 1;
    for (std::uint32_t i = 0; i < k_; ++i, a /= p_, w *= p_) r += ((p_ - a % p_) % p_) * w;
    return r;
  }
  elem sub(elem a, elem b) const { return add(a, neg(b)); }
  elem mul(elem a, elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  elem inv(elem a) const {
    if (a == 0) fail("DivisionByZero", "inverse of 0 in GF(" + std::to_string(q_) + ")");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  elem div(elem a, elem b) const { return mul(a, inv(b)); }
  elem pow(elem a, long n) const {
    if (a == 0) {
      if (n < 0) fail("DivisionByZero", "negative power of 0");
      return n == 0 ? 1 : 0;
    }
    long m = static_cast<long>(q_ - 1);
    long e = ((static_cast<long>(log_[a]) * (n % m)) % m + m) % m;
    return exp_[e];
  }
  elem from_int(long n) const {
    long r = n % static_cast<long>(p_);
    return static_cast<elem>(r < 0 ? r + p_ : r);
  }
  // multiplicative order of a nonzero element
  std::uint32_t mult_order(elem a) const {
    std::uint32_t n = q_ - 1;
    std::uint32_t l = log_[a];
    std::uint32_t g = std::gcd(l, n);
    return n / g;
  }

private:
  explicit GaloisField(std::uint64_t q) {
    auto pk = detail::prime_power(q);
    if (!pk || q > 65536) fail("BadField", "GF(q) needs a prime power q <= 65536, got " + std::to_string(q));
    p_ = pk->first;
    k_ = pk->second;
    q_ = static_cast<std::uint32_t>(q);
    exp_.assign(2 * q_, 0);
    log_.assign(q_, 0);
    if (k_ == 1) {
      for (elem g = 1; g < p_; ++g)
        if (try_generator_prime(g)) return;
    } else {
      // search monic f of degree k for which x generates the unit group
      std::uint32_t low_count = q_;  // p^k choices for the lower coefficients
      for (std::uint32_t low = 1; low < low_count; ++low)
        if (try_modulus(low)) return;
    }
    fail("BadField", "no generator found");
  }

  bool try_generator_prime(elem g) {
    std::vector<bool> seen(q_, false);
    std::uint64_t x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      if (seen[x]) return false;
      seen[x] = true;
      exp_[i] = static_cast<elem>(x);
      log_[x] = i;
      x = x * g % p_;
    }
    finish();
    return true;
  }

  // lower coefficients of f as digits of `low`; powers of x reduced mod f
  bool try_modulus(std::uint32_t low) {
    std::vector<std::uint32_t> f(k_);
    for (std::uint32_t i = 0, r = low; i < k_; ++i, r /= p_) f[i] = r % p_;
    if (f[0] == 0) return false;
    std::vector<std::uint32_t> cur(k_, 0);
    cur[0] = 1;
    std::vector<bool> seen(q_, false);
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      elem code = 0;
      for (std::uint32_t j = k_; j-- > 0;) code = code * p_ + cur[j];
      if (seen[code]) return false;
      seen[code] = true;
      exp_[i] = code;
      log_[code] = i;
      // multiply by x: shift, then subtract top * f
      std::uint32_t top = cur[k_ - 1];
      for (std::uint32_t j = k_ - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      for (std::uint32_t j = 0; j < k_; ++j)
        cur[j] = (cur[j] + (p_ - (top * f[j]) % p_)) % p_;
    }
    finish();
    return true;
  }

  void finish() {
    for (std::uint32_t i = q_ - 1; i < 2 * q_; ++i) exp_[i] = exp_[i - (q_ - 1)];
  }

  std::uint32_t p_ = 0, k_ = 0, q_ = 0;
  std::vector<elem> exp_;
  std::vector<std::uint32_t> log_;
};

// ------------------------------------------------------ F_q[t]

class FqPoly {
public:
  using coeff = GaloisField::elem;

  explicit FqPoly(const GaloisField& F) : F_(&F) {}
  FqPoly(const GaloisField& F, std::vector<coeff> c) : F_(&F), c_(std::move(c)) { trim(); }
  static FqPoly constant(const GaloisField& F, coeff a) { return FqPoly(F, {a}); }
  static FqPoly monomial(const GaloisField& F, coeff a, std::size_t k) {
    std::vector<coeff> c(k + 1, 0);
    c[k] = a;
    return FqPoly(F, std::move(c));
  }

  const GaloisField& field() const { return *F_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  coeff lead() const { return c_.empty() ? 0 : c_.back(); }
  coeff operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<coeff>& coeffs() const { return c_; }

  friend FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    std::vector<coeff> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.F_->add(a[i], b[i]);
    return FqPoly(*a.F_, std::move(r));
  }
  FqPoly operator-() const {
    std::vector<coeff> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F_->neg(c_[i]);
    return FqPoly(*F_, std::move(r));
  }
  friend FqPoly operator-(const FqPoly& a, const FqPoly& b) { return a + (-b); }
  friend FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    if (a.is_zero() || b.is_zero()) return FqPoly(*a.F_);
    const GaloisField& F = *a.F_;
    std::vector<coeff> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (b.c_[j]) r[i + j] = F.add(r[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    return FqPoly(F, std::move(r));
  }
  FqPoly scaled(coeff a) const {
    std::vector<coeff> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F_->mul(c_[i], a);
    return FqPoly(*F_, std::move(r));
  }
  FqPoly monic() const { return is_zero() ? *this : scaled(F_->inv(lead())); }

  // quotient and remainder
  friend std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) {
    if (b.is_zero()) fail("DivisionByZero", "polynomial division by 0");
    const GaloisField& F = *a.F_;
    if (a.degree() < b.degree()) return {FqPoly(F), a};
    std::vector<coeff> r = a.c_;
    std::vector<coeff> q(a.c_.size() - b.c_.size() + 1, 0);
    coeff binv = F.inv(b.lead());
    for (std::size_t k = q.size(); k-- > 0;) {
      coeff c = F.mul(r[k + b.c_.size() - 1], binv);
      q[k] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[k + j] = F.sub(r[k + j], F.mul(c, b.c_[j]));
    }
    return {FqPoly(F, std::move(q)), FqPoly(F, std::move(r))};
  }
  friend FqPoly operator/(const FqPoly& a, const FqPoly& b) { return divmod(a, b).first; }
  friend FqPoly operator%(const FqPoly& a, const FqPoly& b) { return divmod(a, b).second; }

  friend FqPoly gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
      FqPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  coeff eval(coeff x) const {
    coeff r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, x), c_[i]);
    return r;
  }

  // order of vanishing at x (x must not make the polynomial zero)
  int ord_at(coeff x) const {
    if (is_zero()) fail("ZeroFunction", "order of the zero polynomial");
    FqPoly lin(*F_, {F_->neg(x), 1});
    FqPoly cur = *this;
    int n = 0;
    for (;;) {
      auto [qq, r] = divmod(cur, lin);
      if (!r.is_zero()) return n;
      cur = std::move(qq);
      ++n;
    }
  }

  friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.c_ == b.c_; }
  friend std::strong_ordering operator<=>(const FqPoly& a, const FqPoly& b) {
    if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  // "2*t^2+t+1"; `var` names the indeterminate
  std::string str(std::string_view var = "t") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(c_[i]);
        continue;
      }
      if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const GaloisField* F_;
  std::vector<coeff> c_;
};

// product of many polynomials, balanced so large products stay cheap
inline FqPoly product(const GaloisField& F, std::vector<FqPoly> v) {
  if (v.empty()) return FqPoly::constant(F, 1);
  while (v.size() > 1) {
    std::vector<FqPoly> next;
    next.reserve((v.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(v[i] * v[i + 1]);
    if (v.size() % 2) next.push_back(std::move(v.back()));
    v = std::move(next);
  }
  return std::move(v.front());
}

namespace detail {

// polynomial in t over GF(q): sums of terms c*t^k, c a code in 0..q-1
class PolyTextParser {
public:
  PolyTextParser(std::string_view s, std::size_t base, const GaloisField& F, char var)
      : s_(s), base_(base), F_(F), var_(var) {}

  FqPoly parse_sum(std::size_t& i) const {
    FqPoly acc(F_);
    skip(i);
    bool first = true;
    for (;;) {
      bool negate = false;
      skip(i);
      if (i < s_.size() && (s_[i] == '+' || s_[i] == '-')) {
        negate = s_[i] == '-';
        ++i;
      } else if (!first) {
        break;
      }
      FqPoly term = parse_term(i);
      acc = negate ? acc - term : acc + term;
      first = false;
      skip(i);
      if (i >= s_.size() || (s_[i] != '+' && s_[i] != '-')) break;
    }
    return acc;
  }

private:
  FqPoly parse_term(std::size_t& i) const {
    skip(i);
    GaloisField::elem c = 1;
    bool have_coeff = false;
    if (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) {
      std::size_t start = i;
      unsigned long v = 0;
      while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) {
        v = v * 10 + (s_[i] - '0');
        if (v >= F_.order()) throw ParseError("FieldLiteralError", base_ + start, "coefficient out of range 0..q-1");
        ++i;
      }
      c = static_cast<GaloisField::elem>(v);
      have_coeff = true;
      skip(i);
      if (i < s_.size() && s_[i] == '*') {
        ++i;
        skip(i);
        if (i >= s_.size() || s_[i] != var_) throw ParseError("SyntaxError", base_ + i, std::string("expected '") + var_ + "'");
      }
    }
    if (i < s_.size() && s_[i] == var_) {
      ++i;
      std::size_t k = 1;
      skip(i);
      if (i < s_.size() && s_[i] == '^') {
        ++i;
        skip(i);
        std::size_t start = i;
        k = 0;
        while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) k = k * 10 + (s_[i++] - '0');
        if (i == start) throw ParseError("SyntaxError", base_ + i, "expected exponent");
      }
      return FqPoly::monomial(F_, c, k);
    }
    if (!have_coeff) throw ParseError("SyntaxError", base_ + i, "expected a term");
    return FqPoly::constant(F_, c);
  }

  void skip(std::size_t& i) const {
    while (i < s_.size() && (s_[i] == ' ' || s_[i] == '\t')) ++i;
  }

  std::string_view s_;
  std::size_t base_;
  const GaloisField& F_;
  char var_;
};

}  // namespace detail

// ----------------------------------------------------------- Q, v_p

class PadicField;

class PadicNumber {
public:
  PadicNumber(const PadicField& F, mpq_class v) : F_(&F), v_(std::move(v)) { v_.canonicalize(); }

  const PadicField& field() const { return *F_; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  inline ValExp valuation() const;

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) { a.same(b); return {*a.F_, a.v_ + b.v_}; }
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { a.same(b); return {*a.F_, a.v_ - b.v_}; }
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) { a.same(b); return {*a.F_, a.v_ * b.v_}; }
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
    a.same(b);
    if (b.is_zero()) fail("DivisionByZero", "division by 0");
    return {*a.F_, a.v_ / b.v_};
  }
  PadicNumber operator-() const { return {*F_, -v_}; }
  PadicNumber inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of 0");
    return {*F_, 1 / v_};
  }
  PadicNumber& operator+=(const PadicNumber& b) { return *this = *this + b; }
  PadicNumber& operator-=(const PadicNumber& b) { return *this = *this - b; }
  PadicNumber& operator*=(const PadicNumber& b) { return *this = *this * b; }
  PadicNumber& operator/=(const PadicNumber& b) { return *this = *this / b; }

  friend bool operator==(const PadicNumber& a, const PadicNumber& b) { return a.F_ == b.F_ && a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const PadicNumber& a, const PadicNumber& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

private:
  void same(const PadicNumber& b) const {
    if (F_ != b.F_) fail("MixedFields", "operands live in different fields");
  }
  const PadicField* F_;
  mpq_class v_;
};

class PadicField {
public:
  using element = PadicNumber;

  static const PadicField& get(unsigned long p) {
    static detail::Interned<PadicField> pool;
    return pool.get(p, [p] { return std::unique_ptr<PadicField>(new PadicField(p)); });
  }

  unsigned long prime() const { return p_; }
  unsigned long base() const { return p_; }
  std::string descriptor() const { return "padic:" + std::to_string(p_); }
  const GaloisField& residue_field() const { return GaloisField::get(p_); }

  PadicNumber zero() const { return {*this, 0}; }
  PadicNumber one() const { return {*this, 1}; }
  PadicNumber from_int(long n) const { return {*this, mpq_class(n)}; }
  PadicNumber make(mpq_class v) const { return {*this, std::move(v)}; }
  PadicNumber uniformizer() const { return from_int(static_cast<long>(p_)); }

  static long vp(const mpz_class& n, unsigned long p) {
    if (n == 0) return 0;
    mpz_class r = n;
    long v = 0;
    while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
      mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
      ++v;
    }
    return v;
  }
  ValExp valuation(const PadicNumber& x) const {
    if (x.is_zero()) return ValExp::infinity();
    return ValExp(vp(x.value().get_num(), p_) - vp(x.value().get_den(), p_));
  }

  GaloisField::elem residue(const PadicNumber& x) const {
    ValExp v = valuation(x);
    if (v < ValExp(0)) fail("NotIntegral", format(x) + " has negative valuation");
    if (v > ValExp(0)) return 0;
    mpz_class n = x.value().get_num() % p_, d = x.value().get_den() % p_;
    if (n < 0) n += p_;
    const GaloisField& F = residue_field();
    return F.div(static_cast<GaloisField::elem>(n.get_ui()), static_cast<GaloisField::elem>(d.get_ui()));
  }
  PadicNumber lift(GaloisField::elem r) const { return from_int(static_cast<long>(r)); }

  std::string format(const PadicNumber& x) const {
    if (x.value().get_den() == 1) return x.value().get_num().get_str();
    return x.value().get_str();
  }
  PadicNumber parse(std::string_view s, std::size_t base_offset = 0) const {
    std::string t;
    for (char c : s)
      if (c != ' ' && c != '\t') t.push_back(c);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    bool ok = !t.empty();
    for (std::size_t i = 0; i < t.size() && ok; ++i) {
      char c = t[i];
      ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && i == 0);
    }
    mpq_class q;
    if (!ok || q.set_str(t, 10) != 0)
      throw ParseError("FieldLiteralError", base_offset, "bad rational literal '" + std::string(s) + "'");
    if (q.get_den() == 0) throw ParseError("FieldLiteralError", base_offset, "zero denominator");
    q.canonicalize();
    return make(q);
  }

  std::optional<PadicNumber> nth_root(const PadicNumber& x, unsigned n) const {
    if (n == 0) return std::nullopt;
    if (x.is_zero()) return x;
    mpz_class num = x.value().get_num(), den = x.value().get_den();
    bool neg = num < 0;
    if (neg && n % 2 == 0) return std::nullopt;
    if (neg) num = -num;
    mpz_class a, b;
    if (!mpz_root(a.get_mpz_t(), num.get_mpz_t(), n)) return std::nullopt;
    if (!mpz_root(b.get_mpz_t(), den.get_mpz_t(), n)) return std::nullopt;
    mpq_class r(a, b);
    if (neg) r = -r;
    return make(r);
  }
  std::vector<PadicNumber> roots_of_unity(unsigned n) const {
    if (n % 2 == 0) return {one(), from_int(-1)};
    return {one()};
  }

private:
  explicit PadicField(unsigned long p) : p_(p) {
    if (!detail::is_prime(p)) fail("BadField", "padic needs a prime, got " + std::to_string(p));
    if (p > 65536) fail("BadField", "residue field too large");
  }
  unsigned long p_;
};

inline ValExp PadicNumber::valuation() const { return F_->valuation(*this); }

// ----------------------------------------------------- F_q(t), v_inf

class FqtField;

class FqtNumber {
public:
  // num/den reduced, den monic
  FqtNumber(const FqtField& F, FqPoly num, FqPoly den);

  const FqtField& field() const { return *F_; }
  const FqPoly& num() const { return num_; }
  const FqPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  ValExp valuation() const {
    if (is_zero()) return ValExp::infinity();
    return ValExp(long(den_.degree() - num_.degree()));
  }

  friend FqtNumber operator+(const FqtNumber& a, const FqtNumber& b) {
    a.same(b);
    if (a.den_ == b.den_) return {*a.F_, a.num_ + b.num_, a.den_};
    return {*a.F_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  FqtNumber operator-() const { return {*F_, -num_, den_, Reduced{}}; }
  friend FqtNumber operator-(const FqtNumber& a, const FqtNumber& b) { return a + (-b); }
  friend FqtNumber operator*(const FqtNumber& a, const FqtNumber& b) {
    a.same(b);
    return {*a.F_, a.num_ * b.num_, a.den_ * b.den_};
  }
  FqtNumber inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of 0");
    return {*F_, den_, num_};
  }
  friend FqtNumber operator/(const FqtNumber& a, const FqtNumber& b) {
    a.same(b);
    if (b.is_zero()) fail("DivisionByZero", "division by 0");
    return {*a.F_, a.num_ * b.den_, a.den_ * b.num_};
  }
  FqtNumber& operator+=(const FqtNumber& b) { return *this = *this + b; }
  FqtNumber& operator-=(const FqtNumber& b) { return *this = *this - b; }
  FqtNumber& operator*=(const FqtNumber& b) { return *this = *this * b; }
  FqtNumber& operator/=(const FqtNumber& b) { return *this = *this / b; }

  friend bool operator==(const FqtNumber& a, const FqtNumber& b) {
    return a.F_ == b.F_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const FqtNumber& a, const FqtNumber& b) {
    if (auto c = a.num_ <=> b.num_; c != 0) return c;
    return a.den_ <=> b.den_;
  }

private:
  struct Reduced {};
  FqtNumber(const FqtField& F, FqPoly num, FqPoly den, Reduced)
      : F_(&F), num_(std::move(num)), den_(std::move(den)) {}
  void same(const FqtNumber& b) const {
    if (F_ != b.F_) fail("MixedFields", "operands live in different fields");
  }
  const FqtField* F_;
  FqPoly num_, den_;
};

class FqtField {
public:
  using element = FqtNumber;

  static const FqtField& get(unsigned long q) {
    static detail::Interned<FqtField> pool;
    return pool.get(q, [q] { return std::unique_ptr<FqtField>(new FqtField(q)); });
  }

  unsigned long order() const { return F_->order(); }
  unsigned long base() const { return F_->order(); }
  std::string descriptor() const { return "fqt_inf:" + std::to_string(F_->order()); }
  const GaloisField& residue_field() const { return *F_; }
  const GaloisField& coefficients() const { return *F_; }

  FqtNumber zero() const { return make(FqPoly(*F_)); }
  FqtNumber one() const { return make(FqPoly::constant(*F_, 1)); }
  FqtNumber from_int(long n) const { return make(FqPoly::constant(*F_, F_->from_int(n))); }
  FqtNumber constant(GaloisField::elem c) const { return make(FqPoly::constant(*F_, c)); }
  FqtNumber t() const { return make(FqPoly::monomial(*F_, 1, 1)); }
  FqtNumber make(FqPoly num) const { return {*this, std::move(num), FqPoly::constant(*F_, 1)}; }
  FqtNumber make(FqPoly num, FqPoly den) const { return {*this, std::move(num), std::move(den)}; }
  // 1/t, valuation 1
  FqtNumber uniformizer() const { return {*this, FqPoly::constant(*F_, 1), FqPoly::monomial(*F_, 1, 1)}; }

  ValExp valuation(const FqtNumber& x) const { return x.valuation(); }
  GaloisField::elem residue(const FqtNumber& x) const {
    ValExp v = x.valuation();
    if (v < ValExp(0)) fail("NotIntegral", format(x) + " has negative valuation");
    if (v > ValExp(0)) return 0;
    return F_->div(x.num().lead(), x.den().lead());
  }
  FqtNumber lift(GaloisField::elem r) const { return constant(r); }

  std::string format(const FqtNumber& x) const { return "(" + x.num().str() + ")/(" + x.den().str() + ")"; }
  FqtNumber parse(std::string_view s, std::size_t base_offset = 0) const {
    std::size_t i = 0;
    auto skip = [&] {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    };
    detail::PolyTextParser P(s, base_offset, *F_, 't');
    auto group = [&]() -> FqPoly {
      skip();
      if (i < s.size() && s[i] == '(') {
        ++i;
        FqPoly r = P.parse_sum(i);
        skip();
        if (i >= s.size() || s[i] != ')') throw ParseError("SyntaxError", base_offset + i, "expected ')'");
        ++i;
        return r;
      }
      return P.parse_sum(i);
    };
    FqPoly num = group();
    FqPoly den = FqPoly::constant(*F_, 1);
    skip();
    if (i < s.size() && s[i] == '/') {
      ++i;
      den = group();
      skip();
    }
    if (i != s.size()) throw ParseError("FieldLiteralError", base_offset + i, "trailing characters in field literal");
    if (den.is_zero()) throw ParseError("FieldLiteralError", base_offset, "zero denominator");
    return make(num, den);
  }

  // n-th root when it exists in F_q(t); needs p not dividing n
  std::optional<FqtNumber> nth_root(const FqtNumber& x, unsigned n) const {
    if (n == 0) return std::nullopt;
    if (x.is_zero()) return x;
    if (n % F_->characteristic() == 0) return std::nullopt;
    auto rn = poly_root(x.num(), n);
    auto rd = poly_root(x.den(), n);
    if (!rn || !rd) return std::nullopt;
    return make(*rn, *rd);
  }
  std::vector<FqtNumber> roots_of_unity(unsigned n) const {
    std::vector<FqtNumber> r;
    for (GaloisField::elem c = 1; c < F_->order(); ++c)
      if (F_->pow(c, n) == 1) r.push_back(constant(c));
    return r;
  }

  // every polynomial of degree <= d (q^(d+1) of them, zero included)
  std::vector<FqPoly> polys_up_to_degree(int d) const {
    std::vector<FqPoly> out;
    std::size_t q = F_->order();
    std::size_t total = 1;
    for (int i = 0; i <= d; ++i) total *= q;
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<GaloisField::elem> c(d + 1);
      std::size_t r = code;
      for (int i = 0; i <= d; ++i, r /= q) c[i] = static_cast<GaloisField::elem>(r % q);
      out.emplace_back(*F_, std::move(c));
    }
    return out;
  }

private:
  explicit FqtField(unsigned long q) : F_(&GaloisField::get(q)) {}

  std::optional<FqPoly> poly_root(const FqPoly& P, unsigned n) const {
    if (P.degree() % static_cast<int>(n) != 0) return std::nullopt;
    int m = P.degree() / static_cast<int>(n);
    GaloisField::elem lc = 0;
    bool found = false;
    for (GaloisField::elem c = 1; c < F_->order() && !found; ++c)
      if (F_->pow(c, n) == P.lead()) lc = c, found = true;
    if (!found) return std::nullopt;
    // coefficients of R from the top: coefficient of t^(nm - j) in R^n is
    // n*lc^(n-1)*r_(m-j) plus terms in the higher coefficients
    std::vector<GaloisField::elem> r(m + 1, 0);
    r[m] = lc;
    GaloisField::elem scale = F_->mul(F_->from_int(n), F_->pow(lc, n - 1));
    for (int j = 1; j <= m; ++j) {
      FqPoly R(*F_, r);
      FqPoly Rn = FqPoly::constant(*F_, 1);
      for (unsigned k = 0; k < n; ++k) Rn = Rn * R;
      GaloisField::elem diff = F_->sub(P[n * m - j], Rn[n * m - j]);
      r[m - j] = F_->div(diff, scale);
    }
    FqPoly R(*F_, r);
    FqPoly Rn = FqPoly::constant(*F_, 1);
    for (unsigned k = 0; k < n; ++k) Rn = Rn * R;
    if (!(Rn == P)) return std::nullopt;
    return R;
  }

  const GaloisField* F_;
};

inline FqtNumber::FqtNumber(const FqtField& F, FqPoly num, FqPoly den)
    : F_(&F), num_(F.coefficients()), den_(F.coefficients()) {
  if (den.is_zero()) fail("DivisionByZero", "zero denominator");
  if (num.is_zero()) {
    num_ = FqPoly(F.coefficients());
    den_ = FqPoly::constant(F.coefficients(), 1);
    return;
  }
  if (den.degree() > 0 && num.degree() > 0) {
    FqPoly g = gcd(num, den);
    if (g.degree() > 0) {
      num = num / g;
      den = den / g;
    }
  }
  auto lc = den.lead();
  if (lc != 1) {
    auto inv = F.coefficients().inv(lc);
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

// ---------------------------------------------------------- generic

template <class F>
concept ValuedField = requires(const F& K, const typename F::element& x, std::string_view s) {
  { K.zero() } -> std::same_as<typename F::element>;
  { K.one() } -> std::same_as<typename F::element>;
  { K.from_int(1L) } -> std::same_as<typename F::element>;
  { K.uniformizer() } -> std::same_as<typename F::element>;
  { K.base() } -> std::convertible_to<unsigned long>;
  { K.residue(x) } -> std::convertible_to<GaloisField::elem>;
  { K.lift(GaloisField::elem{}) } -> std::same_as<typename F::element>;
  { K.format(x) } -> std::convertible_to<std::string>;
  { K.parse(s) } -> std::same_as<typename F::element>;
  { K.residue_field() } -> std::same_as<const GaloisField&>;
  { x.valuation() } -> std::same_as<ValExp>;
  { x.is_zero() } -> std::same_as<bool>;
  { x.inv() } -> std::same_as<typename F::element>;
};

template <class E>
E pow(const E& x, long n) {
  E base = n < 0 ? x.inv() : x;
  unsigned long m = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  E r = x.field().one();
  while (m) {
    if (m & 1) r *= base;
    m >>= 1;
    if (m) base *= base;
  }
  return r;
}

template <class E>
std::string to_string(const E& x) { return x.field().format(x); }

// |1 - x| <= base^(-eps), i.e. x lies in U_eps
template <class E>
bool in_unit_ball(const E& x, const ValExp& eps) {
  return (x.field().one() - x).valuation() >= eps;
}

}  // namespace ultrak2

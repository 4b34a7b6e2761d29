// The lattice A = F_q[t] in F_q((1/t)): degrees of the Carlitz exponential
// on disks D(g), the unipotent integral over A\R at finite depth, and its
// comparison with the tame symbol at infinity.
#pragma once
#include <map>
#include <optional>
#include <vector>

#include "analytic_approx.hpp"

namespace ultrak2 {

using FqtDisk = Disk<FqtField>;

// D(g) = {z : |g^-1 z| > 1}
inline FqtDisk disk_of(const Matrix2<FqtField>& g) {
  const FqtField& K = g.a.field();
  return mobius_disk(g, FqtDisk::at_infinity(K, ValExp(0), DiskKind::open));
}

inline Matrix2<FqtField> affine(const FqtNumber& y, const FqtNumber& x) {
  const FqtField& K = y.field();
  return {y, x, K.zero(), K.one()};
}

// y = t^m
inline FqtNumber t_power(const FqtField& K, long m) { return pow(K.t(), m); }

// lambda in A with deg lambda <= N, i.e. the F_q-span V_N
inline std::vector<FqtNumber> lattice_points(const FqtField& K, int N) {
  std::vector<FqtNumber> out;
  for (auto& P : K.polys_up_to_degree(N)) out.push_back(K.make(P));
  return out;
}

// deg(e_A)(D(g)) = -#{lambda in A outside D(g)}, counted over V_N after
// checking that the complement ball only meets V_N
inline long deg_carlitz(const Matrix2<FqtField>& g, int N, const std::vector<FqtNumber>& VN) {
  FqtDisk D = disk_of(g);
  if (!D.through_infinity()) fail("DiskMissesInfinity", "D(g) does not contain infinity");
  FqtDisk B = D.complement();
  ValExp reach = B.radius_exp();
  if (!B.center().is_zero()) reach = std::min(reach, B.center().valuation());
  if (!(reach > ValExp(-(N + 1)))) fail("TruncationTooSmall", "complement ball reaches degree " + std::to_string(N + 1));
  long n = 0;
  for (auto& lam : VN)
    if (B.contains(lam)) ++n;
  return -n;
}

inline long deg_carlitz(const Matrix2<FqtField>& g, int N) {
  return deg_carlitz(g, N, lattice_points(g.a.field(), N));
}

// ------------------------------------------------------------------ Haar

// coset representatives x = sum_{i=1..d} eps_i t^-i of A\R modulo
// t^-(d+1) O, each of measure q^-d (mu(A\R) = 1, mu(O) = q)
struct HaarTable {
  const FqtField* K;
  int depth;
  std::vector<FqtNumber> reps;
  mpq_class cell_measure;
};

inline HaarTable haar_table(const FqtField& K, int depth) {
  if (depth < 0) fail("BadDepth", "depth must be >= 0");
  HaarTable h{&K, depth, {}, 1};
  FqtNumber td = pow(K.t(), depth);
  for (auto& P : K.polys_up_to_degree(depth - 1)) h.reps.push_back(K.make(P) / td);
  if (depth == 0) h.reps = {K.zero()};
  for (int i = 0; i < depth; ++i) h.cell_measure /= K.order();
  return h;
}

struct HaarReport {
  mpq_class total;            // mu(A\R)
  mpq_class fundamental;      // mu(t^-1 O): the cells cover it once
  mpq_class ring_by_scaling;  // mu(O) = |t| mu(t^-1 O)
  mpq_class ring_by_cover;    // mu(O) = |A_0| mu(A\R), O -> A\R being |A_0| to 1
  bool pass;
};

inline HaarReport haar_check(const HaarTable& h) {
  const FqtField& K = *h.K;
  mpq_class total = h.cell_measure * mpq_class(static_cast<long>(h.reps.size()));
  mpq_class fund = 0;
  for (auto& x : h.reps)
    if (x.is_zero() || x.valuation() >= ValExp(1)) fund += h.cell_measure;
  long q = static_cast<long>(K.order());
  mpq_class scaled = fund * q, cover = total * q;
  return {total, fund, scaled, cover, total == 1 && fund == 1 && scaled == cover && scaled == q};
}

// ------------------------------------------------------------- integrals

enum class DrinfeldCase { deg, const_eA, eA_eA, rational };

inline std::string to_string(DrinfeldCase c) {
  switch (c) {
    case DrinfeldCase::deg: return "deg";
    case DrinfeldCase::const_eA: return "ii";
    case DrinfeldCase::eA_eA: return "iii";
    case DrinfeldCase::rational: return "i";
  }
  return "?";
}

// sum over level sets of value tensor measure, for integrands of the form
// base^deg(e_A)(D(y, x)) (base absent for the pure degree)
struct DrinfeldIntegral {
  long m = 0;                        // y = t^m
  std::map<long, mpq_class> levels;  // deg -> (|y|^-1 mu)(level set)
  mpq_class deg_integral = 0;        // sum deg * measure, in Z tensor Q = Q
  std::vector<mpq_class> modulus;    // measures of the level sets with a non-neutral integrand
  bool modulus_in_Z = true;
  std::optional<FqtNumber> value;    // base^deg_integral, defined once the modulus lies in Z
};

// integrand table on the depth-d cells; verifies that each cell is
// constant one level deeper
inline std::vector<long> deg_table(const FqtField& K, long m, int depth, int N, const std::vector<FqtNumber>& VN) {
  FqtNumber y = t_power(K, m);
  std::vector<std::pair<FqtDisk, long>> memo;
  auto deg_at = [&](const FqtNumber& x) {
    FqtDisk D = disk_of(affine(y, x));
    for (auto& [E, v] : memo)
      if (E == D) return v;
    long v = deg_carlitz(affine(y, x), N, VN);
    memo.emplace_back(D, v);
    return v;
  };
  HaarTable h = haar_table(K, depth);
  std::vector<long> out;
  FqtNumber step = pow(K.t(), -(depth + 1));
  for (auto& x : h.reps) {
    long v = deg_at(x);
    for (GaloisField::elem e = 1; e < K.order(); ++e)
      if (deg_at(x + K.constant(e) * step) != v)
        fail("NotLocallyConstantAtDepth", "integrand varies inside a depth-" + std::to_string(depth) + " cell");
    out.push_back(v);
  }
  return out;
}

// base = nullopt: pure degree; otherwise the integrand is base^deg
inline DrinfeldIntegral unipotent_integral(const FqtField& K, const std::optional<FqtNumber>& base, long m,
                                           int depth, int N) {
  auto VN = lattice_points(K, N);
  auto table = deg_table(K, m, depth, N, VN);
  HaarTable h = haar_table(K, depth);
  mpq_class w = h.cell_measure;
  for (long i = 0; i < m; ++i) w /= K.order();
  for (long i = 0; i > m; --i) w *= K.order();
  DrinfeldIntegral out;
  out.m = m;
  for (long v : table) out.levels[v] += w;
  for (auto& [v, mu] : out.levels) {
    out.deg_integral += mu * v;
    bool neutral = base ? pow(*base, v) == K.one() : v == 0;
    if (neutral) continue;
    out.modulus.push_back(mu);
    if (mu.get_den() != 1) out.modulus_in_Z = false;
  }
  if (base && out.modulus_in_Z) {
    FqtNumber r = K.one();
    for (auto& [v, mu] : out.levels)
      if (!(pow(*base, v) == K.one())) r *= pow(*base, v * mu.get_num().get_si());
    out.value = r;
  }
  return out;
}

// deg(D(y, x)) = sum over eps of deg(D(y/t, x + y eps)): the complements
// of the smaller disks partition the complement of D(y, x)
inline bool refinement_check(const FqtField& K, const FqtNumber& x, long m, int N) {
  auto VN = lattice_points(K, N);
  FqtNumber y = t_power(K, m), y1 = y * K.uniformizer();
  long sum = 0;
  for (GaloisField::elem e = 0; e < K.order(); ++e) sum += deg_carlitz(affine(y1, x + y * K.constant(e)), N, VN);
  return sum == deg_carlitz(affine(y, x), N, VN);
}

// -------------------------------------------------- tame symbol at infinity

// functions written in u = 1/e_A: the constant c, e_A = 1/u, and
// 1 - e_A(beta) u, evaluated at u = 0
inline FqtNumber symbol_at_infinity(DrinfeldCase c, const FqtField& K, const FqtNumber& param,
                                    const FqtNumber& param2) {
  using RF = RationalFunction<FqtField>;
  RF eA = RF::make(K.one(), {{K.zero(), -1}});
  ProjPoint<FqtField> u0(K.zero());
  switch (c) {
    case DrinfeldCase::const_eA: return tame_symbol(RF::constant_fn(param), eA, u0);
    case DrinfeldCase::eA_eA: return tame_symbol(eA, eA, u0);
    case DrinfeldCase::rational: {
      RF f = RF::make(-param, {{param.inv(), 1}});  // 1 - e(beta) u
      RF g = RF::make(-param2, {{param2.inv(), 1}});
      return tame_symbol(f, g, u0);
    }
    case DrinfeldCase::deg: break;
  }
  fail("BadCase", "no symbol for the pure degree");
}

// ------------------------------------------------------------- case (i)

// f = e_N(z - beta) / e_N(z) = 1 - e_N(beta) / e_N(z), a function of 1/e_A
inline RationalFunction<FqtField> shifted_ratio(const std::vector<FqtNumber>& VN, const FqtNumber& beta) {
  typename RationalFunction<FqtField>::Divisor d;
  for (auto& lam : VN) {
    d.emplace_back(beta + lam, 1);
    d.emplace_back(lam, -1);
  }
  return RationalFunction<FqtField>::make(beta.field().one(), std::move(d));
}

// e_N(beta) = beta prod (1 - beta/lambda)
inline FqtNumber carlitz_at(const std::vector<FqtNumber>& VN, const FqtNumber& beta) {
  FqtNumber r = beta;
  for (auto& lam : VN)
    if (!lam.is_zero()) r *= beta.field().one() - beta / lam;
  return r;
}

struct RationalCaseReport {
  long m;                  // y = t^m used
  int trunc;               // truncation of e_A used for the functions
  FqtNumber value;         // the integrand, constant on A\R
  ValExp distance;         // exponent of |1 - value|
  ValExp certificate;      // min of the U_eps bound and the truncation tail
  mpq_class modulus;       // (|y|^-1 mu)(A\R)
  bool pass;
};

// {f x g}(D(y, x)) on Omega(S_x), S_x = {D(y, x)} and the q disks
// {|z - x - eps y| < |y|}; every boundary Gauss point is eta(x, |y|).
inline std::optional<RationalCaseReport> rational_case_at(const FqtField& K, const FqtNumber& beta,
                                                          const FqtNumber& beta2, long m, int depth,
                                                          const ValExp& delta) {
  if (!(beta.valuation() > ValExp(0)) || !(beta2.valuation() > ValExp(0)))
    fail("BadParameter", "shifts must lie in t^-1 O");
  int N = static_cast<int>(m) + 1;
  auto VN = lattice_points(K, N);
  auto f = shifted_ratio(VN, beta), g = shifted_ratio(VN, beta2);
  FqtNumber y = t_power(K, m);
  HaarTable h = haar_table(K, depth);
  std::vector<std::pair<FqtDisk, FqtNumber>> memo;
  std::optional<FqtNumber> value;
  ValExp cert = ValExp::infinity();
  for (auto& x : h.reps) {
    FqtDisk D = FqtDisk::at_infinity(ValExp(m), DiskKind::open, x);
    std::optional<FqtNumber> v;
    for (auto& [E, val] : memo)
      if (E == D) v = val;
    if (!v) {
      std::vector<FqtDisk> S{D};
      for (GaloisField::elem e = 0; e < K.order(); ++e)
        S.push_back(FqtDisk::finite(x + y * K.constant(e), ValExp(-m), DiskKind::open));
      Subdomain<FqtField> U(K, S);
      // |u| = 1/|e_N| at eta(x, |y|) bounds 1 - f and the truncation error
      ValExp ve(0);
      for (auto& lam : VN) {
        ValExp a = (x - lam).valuation();
        ve = ve + std::min(a, ValExp(-m));
        if (!lam.is_zero()) ve = ve - lam.valuation();
      }
      ValExp vu = -ve;
      ValExp main = std::min(carlitz_at(VN, beta).valuation(), carlitz_at(VN, beta2).valuation()) + vu;
      ValExp tail = main + std::min(std::min(beta.valuation(), beta2.valuation()) + ValExp(N + 1), ValExp(N + 1 - m));
      if (main < delta || tail < delta) return std::nullopt;
      auto w = regulator_bound_check(f, g, U, D, delta);
      cert = std::min({cert, w.distance, tail});
      v = w.value;
      memo.emplace_back(D, *v);
    }
    if (value && !(*value == *v)) fail("NotLocallyConstantAtDepth", "integrand varies over A\\R");
    value = v;
  }
  mpq_class mod = 1;
  for (long i = 0; i < m; ++i) mod /= K.order();
  ValExp dist = (K.one() - *value).valuation();
  return RationalCaseReport{m, N, *value, dist, cert, mod, dist >= delta && cert >= delta};
}

// smallest m >= 1 with a certificate reaching delta
inline RationalCaseReport rational_case(const FqtField& K, const FqtNumber& beta, const FqtNumber& beta2,
                                        const ValExp& delta, int depth, int max_m = 4) {
  for (long m = 1; m <= max_m; ++m)
    if (auto r = rational_case_at(K, beta, beta2, m, depth, delta)) return *r;
  fail("PrecisionUnreachable", "no |y| <= q^" + std::to_string(max_m) + " certifies delta");
}

// --------------------------------------------------------- theorem check

struct SymbolComparison {
  DrinfeldCase which;
  std::optional<FqtNumber> symbol;     // tame symbol at infinity
  std::optional<FqtNumber> expected;   // symbol^|A_0|
  std::optional<FqtNumber> integral;   // {k}_infinity
  mpq_class deg_integral;              // for the pure degree
  bool modulus_in_Z;
  ValExp distance;                     // exponent of |1 - integral/expected|
  std::optional<RationalCaseReport> rational;
  bool pass;
};

inline SymbolComparison compare_with_symbol(DrinfeldCase c, const FqtField& K, const FqtNumber& param, const FqtNumber& param2,
                               int depth, int N, const ValExp& delta) {
  long q = static_cast<long>(K.order());
  SymbolComparison r{c, {}, {}, {}, 0, true, ValExp::infinity(), {}, false};
  switch (c) {
    case DrinfeldCase::deg: {
      auto I = unipotent_integral(K, std::nullopt, 0, depth, N);
      r.deg_integral = I.deg_integral;
      r.modulus_in_Z = I.modulus_in_Z;
      r.pass = I.deg_integral == -q && I.modulus_in_Z;
      return r;
    }
    case DrinfeldCase::const_eA:
    case DrinfeldCase::eA_eA: {
      FqtNumber base = c == DrinfeldCase::const_eA ? param : -K.one();
      if (c == DrinfeldCase::const_eA && !(param.valuation() == ValExp(0)))
        fail("BadParameter", "case ii needs a unit constant");
      auto I = unipotent_integral(K, base, 0, depth, N);
      r.deg_integral = I.deg_integral;
      r.modulus_in_Z = I.modulus_in_Z;
      r.symbol = symbol_at_infinity(c, K, param, param);
      r.expected = pow(*r.symbol, q);
      if (I.value) {
        r.integral = *I.value;
        r.distance = (K.one() - *I.value / *r.expected).valuation();
      } else {
        r.distance = ValExp(0);
      }
      r.pass = I.modulus_in_Z && r.distance >= delta;
      return r;
    }
    case DrinfeldCase::rational: {
      auto R = rational_case(K, param, param2, delta, depth);
      auto VN = lattice_points(K, R.trunc);
      r.symbol = symbol_at_infinity(c, K, carlitz_at(VN, param), carlitz_at(VN, param2));
      r.expected = pow(*r.symbol, q);
      r.integral = R.value;
      r.distance = (K.one() - R.value / *r.expected).valuation();
      r.modulus_in_Z = R.modulus.get_den() == 1;
      r.rational = R;
      r.pass = R.pass && r.distance >= delta;
      return r;
    }
  }
  return r;
}

// ------------------------------------------------------- y-independence

struct YIndependenceReport {
  std::vector<DrinfeldIntegral> runs;  // one per m
  bool values_agree;
  bool moduli_in_Z;
  bool pass;
};

inline YIndependenceReport y_independence_check(const FqtField& K, const std::optional<FqtNumber>& base,
                                                const std::vector<long>& exps, int depth, int N) {
  YIndependenceReport r{{}, true, true, false};
  for (long m : exps) r.runs.push_back(unipotent_integral(K, base, m, depth, N));
  for (auto& I : r.runs) {
    if (I.deg_integral != r.runs.front().deg_integral) r.values_agree = false;
    if (!I.modulus_in_Z) r.moduli_in_Z = false;
  }
  r.pass = r.values_agree && r.moduli_in_Z;
  return r;
}

}  // namespace ultrak2

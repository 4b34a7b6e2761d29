#pragma once
#include <gtest/gtest.h>

#include <ultrak2/ultrak2.hpp>

// fails unless `expr` throws an ultrak2::Error carrying `code`
#define EXPECT_CODE(expr, want)                                       \
  do {                                                                \
    try {                                                             \
      (void)(expr);                                                   \
      ADD_FAILURE() << #expr << " did not throw " << (want);          \
    } catch (const ultrak2::Error& err_) {                            \
      EXPECT_EQ(err_.code(), std::string(want)) << err_.what();       \
    }                                                                 \
  } while (0)

namespace ultrak2 {
inline void PrintTo(const ValExp& v, std::ostream* os) { *os << v.str(); }
inline void PrintTo(const PadicNumber& x, std::ostream* os) { *os << to_string(x); }
inline void PrintTo(const FqtNumber& x, std::ostream* os) { *os << to_string(x); }
}  // namespace ultrak2

namespace fixture {
using namespace ultrak2;

inline const PadicField& Q5() { return PadicField::get(5); }
inline const PadicField& Q2() { return PadicField::get(2); }
inline const FqtField& F3() { return FqtField::get(3); }

inline PadicNumber q5(long n, long d = 1) { return Q5().make(mpq_class(n, d)); }

template <ValuedField F>
RationalFunction<F> fn(const F& K, const char* text) { return parse_function(text, K); }

inline Subdomain<PadicField> unit_annulus() { return Subdomain<PadicField>::annulus(Q5(), ValExp(0), ValExp(0)); }
}  // namespace fixture

// Text forms used on the command line: field descriptors, function
// literals `c*(z-root)^e*...`, disk literals and map descriptions.
#pragma once
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geometry.hpp"

namespace ultrak2 {

using AnyField = std::variant<const PadicField*, const FqtField*>;

// "padic:5" or "fqt_inf:3"
inline AnyField parse_field(std::string_view desc) {
  auto colon = desc.find(':');
  if (colon == std::string_view::npos) throw ParseError("SyntaxError", desc.size(), "expected kind:base");
  std::string_view kind = desc.substr(0, colon), num = desc.substr(colon + 1);
  unsigned long b = 0;
  if (num.empty()) throw ParseError("SyntaxError", colon + 1, "missing base");
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (num[i] < '0' || num[i] > '9') throw ParseError("SyntaxError", colon + 1 + i, "base must be decimal");
    b = b * 10 + static_cast<unsigned long>(num[i] - '0');
    if (b > 1000000) throw ParseError("SyntaxError", colon + 1, "base too large");
  }
  if (kind == "padic") return &PadicField::get(b);
  if (kind == "fqt_inf") return &FqtField::get(b);
  throw ParseError("SyntaxError", 0, "unknown field kind '" + std::string(kind) + "'");
}

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// end of a field literal starting at i: stops at a top-level `stop` char
// or an unmatched ')'
inline std::size_t literal_end(std::string_view s, std::size_t i, std::string_view stops) {
  int depth = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    else if (c == ')') {
      if (depth == 0) return i;
      --depth;
    } else if (depth == 0 && stops.find(c) != std::string_view::npos) return i;
  }
  return i;
}

inline std::string_view trim(std::string_view s, std::size_t& offset) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1), ++offset;
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <ValuedField F>
Elem<F> parse_literal(const F& K, std::string_view s, std::size_t offset) {
  std::size_t off = offset;
  std::string_view t = trim(s, off);
  if (t.empty()) throw ParseError("SyntaxError", offset, "empty field literal");
  return K.parse(t, off);
}

inline long parse_int(std::string_view s, std::size_t& i, std::size_t base) {
  std::size_t start = i;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  if (i >= s.size() || s[i] < '0' || s[i] > '9') throw ParseError("SyntaxError", base + start, "expected an integer");
  long v = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
    v = v * 10 + (s[i++] - '0');
    if (v > 1000000) throw ParseError("SyntaxError", base + start, "exponent too large");
  }
  return neg ? -v : v;
}

}  // namespace detail

// const * (z - root)^exp * ...; bare `z` is (z-0), constants multiply
template <ValuedField F>
RationalFunction<F> parse_function(std::string_view s, const F& K) {
  Elem<F> c = K.one();
  std::vector<std::pair<Elem<F>, int>> roots;
  auto add = [&](const Elem<F>& a, int n) {
    for (auto& [b, m] : roots)
      if (b == a) return void(m += n);
    roots.emplace_back(a, n);
  };
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && detail::is_space(s[i])) ++i;
  };
  auto exponent = [&]() -> long {
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip();
      return detail::parse_int(s, i, 0);
    }
    return 1;
  };
  skip();
  if (i == s.size()) throw ParseError("SyntaxError", 0, "empty function literal");
  while (true) {
    skip();
    std::size_t start = i;
    if (i < s.size() && s[i] == 'z') {
      ++i;
      add(K.zero(), static_cast<int>(exponent()));
    } else if (i < s.size() && s[i] == '(') {
      std::size_t j = i + 1;
      while (j < s.size() && detail::is_space(s[j])) ++j;
      if (j < s.size() && s[j] == 'z') {
        i = j + 1;
        skip();
        Elem<F> root = K.zero();
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
          bool minus = s[i] == '-';
          ++i;
          std::size_t e = detail::literal_end(s, i, "");
          if (e >= s.size()) throw ParseError("SyntaxError", e, "expected ')'");
          std::size_t off = i;
          std::string_view lit = detail::trim(s.substr(i, e - i), off);
          if (lit.empty()) throw ParseError("SyntaxError", e, "missing root after 'z-'");
          root = K.parse(lit, off);
          if (!minus) root = -root;
          i = e;
        }
        skip();
        if (i >= s.size() || s[i] != ')') throw ParseError("SyntaxError", i, "expected ')'");
        ++i;
        add(root, static_cast<int>(exponent()));
      } else {
        std::size_t e = detail::literal_end(s, i, "*^");
        c *= detail::parse_literal(K, s.substr(i, e - i), i);
        i = e;
        if (i < s.size() && s[i] == '^') throw ParseError("SyntaxError", i, "constants take no exponent");
      }
    } else {
      std::size_t e = detail::literal_end(s, i, "*^");
      if (e == start) throw ParseError("SyntaxError", i, "expected a factor");
      c *= detail::parse_literal(K, s.substr(i, e - i), i);
      i = e;
      if (i < s.size() && s[i] == '^') throw ParseError("SyntaxError", i, "constants take no exponent");
    }
    skip();
    if (i == s.size()) break;
    if (s[i] != '*') throw ParseError("SyntaxError", i, "expected '*'");
    ++i;
  }
  std::vector<std::pair<Elem<F>, int>> d;
  for (auto& [a, n] : roots)
    if (n != 0) d.emplace_back(a, n);
  return RationalFunction<F>::make(c, std::move(d));
}

// canonical text: constant first, roots in sorted order, ^e only when e != 1
template <ValuedField F>
std::string format_function(const RationalFunction<F>& f) {
  const F& K = f.field();
  std::string s = K.format(f.constant());
  for (auto& [a, n] : f.divisor()) {
    s += "*(z-" + K.format(a) + ")";
    if (n != 1) s += "^" + std::to_string(n);
  }
  return s;
}

// disk(center, e, open|closed), disk(inf, e, kind) or disk(inf, e, kind, anchor)
template <ValuedField F>
Disk<F> parse_disk(std::string_view s, const F& K, std::size_t base = 0) {
  std::size_t i = 0;
  while (i < s.size() && detail::is_space(s[i])) ++i;
  if (s.substr(i, 5) != "disk(") throw ParseError("SyntaxError", base + i, "expected 'disk('");
  i += 5;
  std::vector<std::pair<std::string_view, std::size_t>> args;
  while (true) {
    std::size_t e = detail::literal_end(s, i, ",");
    std::size_t off = base + i;
    args.emplace_back(detail::trim(s.substr(i, e - i), off), off);
    if (e >= s.size()) throw ParseError("SyntaxError", base + e, "expected ')'");
    i = e + 1;
    if (s[e] == ')') break;
  }
  while (i < s.size() && detail::is_space(s[i])) ++i;
  if (i != s.size()) throw ParseError("SyntaxError", base + i, "trailing characters after disk");
  if (args.size() < 3 || args.size() > 4) throw ParseError("SyntaxError", base, "disk takes 3 or 4 arguments");
  ValExp e;
  try {
    e = ValExp::parse(args[1].first);
  } catch (const Error&) {
    throw ParseError("FieldLiteralError", args[1].second, "bad radius exponent");
  }
  DiskKind kind;
  if (args[2].first == "open") kind = DiskKind::open;
  else if (args[2].first == "closed") kind = DiskKind::closed;
  else throw ParseError("SyntaxError", args[2].second, "expected open or closed");
  if (args[0].first == "inf") {
    Elem<F> anchor = args.size() == 4 ? K.parse(args[3].first, args[3].second) : K.zero();
    return Disk<F>::at_infinity(e, kind, anchor);
  }
  if (args.size() == 4) throw ParseError("SyntaxError", args[3].second, "anchor only for disks at infinity");
  return Disk<F>::finite(K.parse(args[0].first, args[0].second), e, kind);
}

template <ValuedField F>
std::string format_disk(const Disk<F>& D) {
  const F& K = D.field();
  std::string kind = D.is_open() ? "open" : "closed";
  if (D.through_infinity()) {
    std::string s = "disk(inf, " + D.radius_exp().str() + ", " + kind;
    if (!D.center().is_zero()) s += ", " + K.format(D.center());
    return s + ")";
  }
  return "disk(" + K.format(D.center()) + ", " + D.radius_exp().str() + ", " + kind + ")";
}

// disks separated by ';'
template <ValuedField F>
Subdomain<F> parse_subdomain(std::string_view s, const F& K) {
  std::vector<Disk<F>> disks;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t e = detail::literal_end(s, i, ";");
    std::string_view piece = s.substr(i, e - i);
    bool blank = true;
    for (char c : piece) blank = blank && detail::is_space(c);
    if (!blank) disks.push_back(parse_disk(piece, K, i));
    i = e + 1;
  }
  return Subdomain<F>(K, std::move(disks));
}

// stages separated by ';': "mobius:a,b,c,d" or "power:n", applied left to right
template <ValuedField F>
RationalMap<F> parse_map(std::string_view s, const F& K) {
  RationalMap<F> h(K);
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t e = detail::literal_end(s, i, ";");
    std::size_t off = i;
    std::string_view piece = detail::trim(s.substr(i, e - i), off);
    i = e + 1;
    if (piece.empty()) continue;
    if (piece.substr(0, 6) == "power:") {
      std::size_t j = 6;
      long n = detail::parse_int(piece, j, off);
      if (j != piece.size()) throw ParseError("SyntaxError", off + j, "trailing characters after power");
      h = h.then(RationalMap<F>::power(K, static_cast<int>(n)));
    } else if (piece.substr(0, 7) == "mobius:") {
      std::vector<Elem<F>> m;
      std::size_t j = 7;
      while (j <= piece.size()) {
        std::size_t k = detail::literal_end(piece, j, ",");
        m.push_back(detail::parse_literal(K, piece.substr(j, k - j), off + j));
        j = k + 1;
      }
      if (m.size() != 4) throw ParseError("SyntaxError", off, "mobius takes four entries");
      h = h.then(RationalMap<F>::mobius({m[0], m[1], m[2], m[3]}));
    } else {
      throw ParseError("SyntaxError", off, "expected mobius: or power:");
    }
  }
  return h;
}

}  // namespace ultrak2

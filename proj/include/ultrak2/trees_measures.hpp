// Oriented graphs with edge reversal, harmonic cochains, the finite-depth
// tree of the ring of integers of a p-adic field, measures on its ends
// coming from K_2 elements, integration and pushforward of measures.
#pragma once
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "k2reg.hpp"

namespace ultrak2 {

class OrientedGraph {
public:
  struct Edge {
    int o, t, bar;
  };

  int add_vertex() {
    out_.emplace_back();
    return static_cast<int>(out_.size()) - 1;
  }
  // adds u -> v and its reversal; returns the id of u -> v
  int add_edge(int u, int v) {
    int e = static_cast<int>(edges_.size());
    edges_.push_back({u, v, e + 1});
    edges_.push_back({v, u, e});
    out_.at(u).push_back(e);
    out_.at(v).push_back(e + 1);
    return e;
  }

  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<int>& out_edges(int v) const { return out_.at(v); }

  bool well_formed() const {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& a = edges_[e];
      const Edge& b = edges_.at(a.bar);
      if (b.bar != static_cast<int>(e) || b.o != a.t || b.t != a.o) return false;
    }
    return true;
  }

private:
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
};

template <class T>
using Cochain = std::map<int, T>;

// phi(e) phi(bar e) = neutral and, at every vertex, the product over
// outgoing edges is neutral.  With interior_only the vertex condition is
// skipped at vertices of degree one (the cut-off of a truncated tree).
template <class T, class Op = std::multiplies<>>
bool harmonic_check(const OrientedGraph& G, const Cochain<T>& phi, const T& neutral, Op op = {},
                    bool interior_only = false) {
  auto at = [&](int e) -> const T& {
    auto it = phi.find(e);
    if (it == phi.end()) fail("MissingEdgeValue", "edge " + std::to_string(e));
    return it->second;
  };
  for (std::size_t e = 0; e < G.edge_count(); ++e)
    if (!(op(at(static_cast<int>(e)), at(G.edge(static_cast<int>(e)).bar)) == neutral)) return false;
  for (std::size_t v = 0; v < G.vertex_count(); ++v) {
    const auto& out = G.out_edges(static_cast<int>(v));
    if (interior_only && out.size() <= 1) continue;
    T s = neutral;
    for (int e : out) s = op(s, at(e));
    if (!(s == neutral)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- tree

// Cells a + p^n Z_p for 0 <= n <= depth, plus a vertex beyond the root
// for the disk at infinity.  Edge e carries the set of ends T_e it points
// to: a cell, or the complement of a cell.
class StandardTree {
public:
  struct Cell {
    int level;
    long rep;  // 0 <= rep < p^level
  };
  struct Ends {
    int cell;
    bool complement;
  };

  StandardTree(long p, int depth) : p_(p), depth_(depth) {
    if (p < 2 || depth < 0) fail("BadTree", "needs p >= 2 and depth >= 0");
    infinity_ = graph_.add_vertex();
    cells_.push_back({-1, 0});
    root_ = graph_.add_vertex();
    cells_.push_back({0, 0});
    add_ends(graph_.add_edge(infinity_, root_), root_);
    grow(root_);
  }

  long p() const { return p_; }
  int depth() const { return depth_; }
  const OrientedGraph& graph() const { return graph_; }
  int root() const { return root_; }
  int infinity_vertex() const { return infinity_; }
  const Cell& cell(int v) const { return cells_.at(v); }
  const Ends& ends(int e) const { return ends_.at(e); }
  long width(int level) const {
    long w = 1;
    for (int i = 0; i < level; ++i) w *= p_;
    return w;
  }

  // digits d0 d1 ... of the representative, lowest first
  std::string address(int v) const {
    const Cell& c = cell(v);
    if (c.level < 0) return "inf";
    std::string s;
    long r = c.rep;
    for (int i = 0; i < c.level; ++i, r /= p_) s += digit(r % p_);
    return s;
  }
  int vertex_at(std::string_view addr) const {
    if (addr == "inf") return infinity_;
    if (static_cast<int>(addr.size()) > depth_) fail("BadAddress", "address deeper than the tree");
    long rep = 0, w = 1;
    for (char ch : addr) {
      long d = undigit(ch);
      if (d < 0 || d >= p_) fail("BadAddress", std::string("digit ") + ch);
      rep += d * w;
      w *= p_;
    }
    return index_.at({static_cast<int>(addr.size()), rep});
  }

  // the cell as a disk {v(z - rep) >= level}
  template <ValuedField F>
  Disk<F> disk(const F& K, int v) const {
    const Cell& c = cell(v);
    if (c.level < 0) fail("BadAddress", "the infinity vertex is not a cell");
    return Disk<F>::finite(K.from_int(c.rep), ValExp(c.level - 1), DiskKind::open);
  }

  std::vector<int> leaves() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < cells_.size(); ++v)
      if (cells_[v].level == depth_) out.push_back(static_cast<int>(v));
    return out;
  }

private:
  static char digit(long d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + d - 10); }
  static long undigit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
  }
  void add_ends(int e, int child) {
    ends_.resize(graph_.edge_count());
    ends_[e] = {child, false};
    ends_[e + 1] = {child, true};
  }
  void grow(int v) {
    const Cell c = cells_[v];
    index_[{c.level, c.rep}] = v;
    if (c.level == depth_) return;
    long w = width(c.level);
    for (long d = 0; d < p_; ++d) {
      int u = graph_.add_vertex();
      cells_.push_back({c.level + 1, c.rep + d * w});
      add_ends(graph_.add_edge(v, u), u);
      grow(u);
    }
  }

  long p_;
  int depth_;
  OrientedGraph graph_;
  std::vector<Cell> cells_;
  std::vector<Ends> ends_;
  std::map<std::pair<int, long>, int> index_;
  int root_ = 0, infinity_ = 0;
};

// ------------------------------------------------------------- measures

// values on the depth-d cells of Z_p, indexed by representative; coarser
// cells get the product of their leaves
template <class T>
class EndsMeasure {
public:
  EndsMeasure(long p, int depth, std::vector<T> leaves, T neutral)
      : p_(p), depth_(depth), leaves_(std::move(leaves)), neutral_(std::move(neutral)) {
    long w = 1;
    for (int i = 0; i < depth_; ++i) w *= p_;
    if (static_cast<long>(leaves_.size()) != w) fail("DepthMismatch", "table size is not p^depth");
  }
  long p() const { return p_; }
  int depth() const { return depth_; }
  const std::vector<T>& leaves() const { return leaves_; }
  const T& neutral() const { return neutral_; }

  T value(int level, long rep) const {
    if (level > depth_) fail("DepthMismatch", "cell finer than the table");
    long w = 1;
    for (int i = 0; i < level; ++i) w *= p_;
    T s = neutral_;
    for (long r = rep % w; r < static_cast<long>(leaves_.size()); r += w) s = s * leaves_[r];
    return s;
  }
  T total() const { return value(0, 0); }

  // product over the leaves inside D; D must be a union of leaf cells
  template <ValuedField F>
  T value_on(const F& K, const Disk<F>& D) const {
    T s = neutral_;
    for (long r = 0; r < static_cast<long>(leaves_.size()); ++r)
      if (D.contains(K.from_int(r))) s = s * leaves_[r];
    return s;
  }

  friend bool operator==(const EndsMeasure& a, const EndsMeasure& b) {
    return a.p_ == b.p_ && a.depth_ == b.depth_ && a.leaves_ == b.leaves_;
  }

private:
  long p_;
  int depth_;
  std::vector<T> leaves_;
  T neutral_;
};

template <ValuedField F>
void require_support_in_integers(const K2Element<F>& k) {
  for (auto& x : k.support())
    if (x.valuation() < ValExp(0)) fail("SupportNotInK", "support point " + to_string(x) + " not integral");
}

// product of the tame symbols of k at the divisor points inside the cell
template <ValuedField F>
Elem<F> regulator_measure(const K2Element<F>& k, const Disk<F>& cell) {
  require_support_in_integers(k);
  const F& K = cell.field();
  Elem<F> r = K.one();
  for (auto& x : k.support())
    if (cell.contains(x)) r *= tame_symbol(k, ProjPoint<F>(x), K);
  if (cell.through_infinity()) r *= tame_symbol(k, ProjPoint<F>::infinity(), K);
  return r;
}

// the measure {k} on Z_p at depth d; k must lie in K_2 of the complement,
// which for integral support means a trivial tame symbol at infinity
inline EndsMeasure<PadicNumber> measure_from_k2(const K2Element<PadicField>& k, const PadicField& K, int depth) {
  require_support_in_integers(k);
  if (!(tame_symbol(k, ProjPoint<PadicField>::infinity(), K) == K.one()))
    fail("NotInK2", "nontrivial tame symbol at infinity");
  StandardTree T(K.residue_field().order(), depth);
  std::vector<PadicNumber> leaves(T.width(depth), K.one());
  for (int v : T.leaves()) leaves[T.cell(v).rep] = regulator_measure(k, T.disk(K, v));
  return {T.p(), depth, std::move(leaves), K.one()};
}

// c(e) = mu(T_e); the complement of a cell gets mu(K) / mu(cell)
template <class T>
Cochain<T> cochain_from_measure(const StandardTree& tree, const EndsMeasure<T>& mu) {
  if (tree.depth() != mu.depth() || tree.p() != mu.p()) fail("DepthMismatch", "tree and measure differ");
  Cochain<T> c;
  T all = mu.total();
  for (std::size_t e = 0; e < tree.graph().edge_count(); ++e) {
    auto [v, comp] = tree.ends(static_cast<int>(e));
    const auto& cell = tree.cell(v);
    T m = mu.value(cell.level, cell.rep);
    c.emplace(static_cast<int>(e), comp ? all * m.inv() : m);
  }
  return c;
}

// ------------------------------------------------------------ integrals

// sum over g of g tensor mu(f^-1(g)) for an integer-valued table f.  For
// M = Z the tensor product with the modulus is the modulus itself, so the
// integral is prod mu(f^-1(g))^g.
template <class T>
struct Integral {
  std::map<long, T> level_sets;  // g -> mu(f^-1(g))
  std::vector<T> modulus;        // generators mu(f^-1(g)), g != 0
  T value;
};

template <class T>
Integral<T> integrate(const std::vector<long>& f, const EndsMeasure<T>& mu) {
  if (f.size() != mu.leaves().size()) fail("DepthMismatch", "table and measure have different depths");
  Integral<T> out{{}, {}, mu.neutral()};
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto [it, fresh] = out.level_sets.try_emplace(f[i], mu.neutral());
    it->second = it->second * mu.leaves()[i];
  }
  for (auto& [g, m] : out.level_sets) {
    if (g == 0) continue;
    out.modulus.push_back(m);
    out.value = out.value * pow(m, g);
  }
  return out;
}

// -------------------------------------------------------- pushforward

// h^* mu on Z_p for a Moebius h with h(Z_p) = Z_p.  The indicator of a
// depth-d cell C is pushed through H_1(h) on the partition by depth-d cells
// and their images, then paired with mu.
template <class T>
EndsMeasure<T> measure_pushforward(const RationalMap<PadicField>& h, const EndsMeasure<T>& mu, const PadicField& K) {
  if (h.degree() != 1) fail("MapNotCertified", "only Moebius maps are certified");
  auto hp = h.as_polyfrac();
  StandardTree tree(mu.p(), mu.depth());
  std::vector<int> leaves = tree.leaves();
  std::vector<Disk<PadicField>> S, img;
  for (int v : leaves) S.push_back(tree.disk(K, v));
  for (auto& D : S) {
    Disk<PadicField> E = mobius_disk(h.as_matrix(), D);
    if (E.through_infinity() || !(E.radius_exp() == D.radius_exp()) || !E.is_open() ||
        E.center().valuation() < ValExp(0))
      fail("MapNotCertified", "image of a cell is not a cell of Z_p");
    img.push_back(E);
  }
  Subdomain<PadicField> U(K, S), Y(K, img);
  std::vector<T> out(mu.leaves().size(), mu.neutral());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    H1Class c = H1Class::generator(S.size(), i);
    H1Class g;
    try {
      g = h1_pushforward(hp, U, Y, c);
    } catch (const Error& e) {
      fail("MapNotCertified", e.what());
    }
    // g is defined up to constants; mu has total volume neutral for k in K_2
    T v = mu.neutral();
    for (std::size_t j = 0; j < img.size(); ++j)
      if (g[j]) v = v * pow(mu.value_on(K, img[j]), g[j]);
    out[tree.cell(leaves[i]).rep] = v;
  }
  return {mu.p(), mu.depth(), std::move(out), mu.neutral()};
}

// ----------------------------------------------------------------- DOT

template <class T>
std::string to_dot(const StandardTree& tree, const Cochain<T>& c) {
  std::ostringstream os;
  os << "digraph cochain {\n";
  const auto& G = tree.graph();
  for (std::size_t v = 0; v < G.vertex_count(); ++v)
    os << "  v" << v << " [label=\"" << tree.address(static_cast<int>(v)) << "\"];\n";
  // one orientation per edge: the one pointing away from infinity
  for (std::size_t e = 0; e < G.edge_count(); e += 2) {
    auto [o, t, bar] = G.edge(static_cast<int>(e));
    os << "  v" << o << " -> v" << t << " [label=\"";
    auto it = c.find(static_cast<int>(e));
    if (it != c.end()) os << to_string(it->second);
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ultrak2

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <span>
#include <sstream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hpart/errors.hpp"
#include "hpart/text.hpp"

namespace hpart {

/// Vertex ids are 1-based.
using Vertex = int;

/// Vertex subset indexed by id; bit 0 is never set.
using VertexSet = boost::dynamic_bitset<std::uint64_t>;

using Edge = std::pair<Vertex, Vertex>;

/// Finite simple undirected graph on vertices 1..n with a bit-matrix adjacency.
class Graph {
 public:
  Graph() : Graph(0) {}
  explicit Graph(int n) : n_(n) {
    if (n < 0) throw ContractViolation("vertex count must be non-negative");
    rows_.assign(static_cast<std::size_t>(n) + 1, VertexSet(static_cast<std::size_t>(n) + 1));
  }
  Graph(int n, std::span<const Edge> edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }
  Graph(int n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return m_; }

  bool contains(Vertex v) const noexcept { return v >= 1 && v <= n_; }

  /// Inserts {u,v}; returns false when already present.
  bool add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ContractViolation("loop at vertex " + std::to_string(u));
    if (rows_[u][v]) return false;
    rows_[u].set(v);
    rows_[v].set(u);
    ++m_;
    return true;
  }

  bool remove_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v || !rows_[u][v]) return false;
    rows_[u].reset(v);
    rows_[v].reset(u);
    --m_;
    return true;
  }

  bool adjacent(Vertex u, Vertex v) const noexcept { return rows_[u][v]; }
  const VertexSet& neighbors(Vertex v) const noexcept { return rows_[v]; }
  std::size_t degree(Vertex v) const { return rows_[v].count(); }

  /// All vertex ids as a set (bit 0 clear).
  VertexSet vertex_set() const {
    VertexSet s(static_cast<std::size_t>(n_) + 1);
    s.set();
    s.reset(0);
    return s;
  }

  /// Sorted edge list, smaller id first.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 1; u <= n_; ++u)
      for (auto v = rows_[u].find_next(static_cast<std::size_t>(u)); v != VertexSet::npos;
           v = rows_[u].find_next(v))
        out.emplace_back(u, static_cast<Vertex>(v));
    return out;
  }

  /// Subgraph induced on `vs`; vertex vs[i] becomes i+1.
  Graph induced(std::span<const Vertex> vs) const {
    Graph g(static_cast<int>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (adjacent(vs[i], vs[j])) g.add_edge(static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1));
    return g;
  }

  /// Renames vertex v to perm[v] (perm[0] ignored); perm must be a bijection on 1..n.
  Graph relabeled(std::span<const Vertex> perm) const {
    Graph g(n_);
    for (auto [u, v] : edges()) g.add_edge(perm[u], perm[v]);
    return g;
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  void check_vertex(Vertex v) const {
    if (!contains(v))
      throw ContractViolation("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
  }

  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<VertexSet> rows_;
};

/// Complete graph on n vertices.
inline Graph complete_graph(int n) {
  Graph g(n);
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

/// Graph on n vertices whose edge set is given by the bits of `code` over the
/// lexicographic pair order (1,2),(1,3),...,(n-1,n). Used for exhaustive enumeration.
inline Graph graph_from_code(int n, std::uint64_t code) {
  Graph g(n);
  int bit = 0;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v, ++bit)
      if ((code >> bit) & 1u) g.add_edge(u, v);
  return g;
}

namespace detail {

inline int parse_int(std::string_view tok, std::size_t lineno) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(lineno, "expected integer, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

/// Parses "p <n>" followed by "e <u> <v>" lines. Duplicate edges collapse.
inline Graph parse_graph(std::string_view text) {
  std::optional<Graph> g;
  detail::for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    auto toks = detail::split_ws(line);
    if (detail::is_comment_or_blank(toks)) return;
    if (toks[0] == "p") {
      if (g) throw ParseError(lineno, "duplicate 'p' line");
      if (toks.size() != 2) throw ParseError(lineno, "expected 'p <n>'");
      int n = detail::parse_int(toks[1], lineno);
      if (n < 0) throw ParseError(lineno, "vertex count must be non-negative");
      g.emplace(n);
    } else if (toks[0] == "e") {
      if (!g) throw ParseError(lineno, "edge before 'p' line");
      if (toks.size() != 3) throw ParseError(lineno, "expected 'e <u> <v>'");
      int u = detail::parse_int(toks[1], lineno);
      int v = detail::parse_int(toks[2], lineno);
      if (!g->contains(u) || !g->contains(v))
        throw ParseError(lineno, "vertex id out of range 1.." + std::to_string(g->order()));
      if (u == v) throw ParseError(lineno, "loop edge at vertex " + std::to_string(u));
      g->add_edge(u, v);
    } else {
      throw ParseError(lineno, "unknown line type '" + std::string(toks[0]) + "'");
    }
  });
  if (!g) throw ParseError(0, "missing 'p <n>' line");
  return std::move(*g);
}

/// Serializes in the graph file format; each header line is written as a '#' comment.
inline std::string to_text(const Graph& g, std::span<const std::string> header = {}) {
  std::ostringstream os;
  for (const auto& h : header) os << "# " << h << '\n';
  os << "p " << g.order() << '\n';
  for (auto [u, v] : g.edges()) os << "e " << u << ' ' << v << '\n';
  return os.str();
}

}  // namespace hpart

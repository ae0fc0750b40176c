#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "hpart/errors.hpp"
#include "hpart/graph.hpp"
#include "hpart/model.hpp"

namespace hpart {

/// Four vertices (x_A, x_B, x_C, x_D).
struct Quadruplet {
  std::array<Vertex, 4> v{};

  Vertex operator[](Label l) const noexcept { return v[static_cast<std::size_t>(index_of(l))]; }
  bool operator==(const Quadruplet&) const = default;
  auto operator<=>(const Quadruplet&) const = default;

  bool valid_in(const Graph& g) const {
    for (std::size_t i = 0; i < 4; ++i) {
      if (!g.contains(v[i])) return false;
      for (std::size_t j = i + 1; j < 4; ++j)
        if (v[i] == v[j]) return false;
    }
    return true;
  }

  std::string to_string() const {
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) +
           "," + std::to_string(v[3]) + ")";
  }
};

/// Classes V_A..V_D, each kept sorted.
struct Partition {
  std::array<std::vector<Vertex>, 4> classes;

  std::vector<Vertex>& operator[](Label l) { return classes[static_cast<std::size_t>(index_of(l))]; }
  const std::vector<Vertex>& operator[](Label l) const {
    return classes[static_cast<std::size_t>(index_of(l))];
  }

  /// Builds a partition from a per-vertex label vector indexed 1..n.
  static Partition from_labels(std::span<const Label> labels_by_vertex) {
    Partition p;
    for (std::size_t v = 1; v < labels_by_vertex.size(); ++v)
      p[labels_by_vertex[v]].push_back(static_cast<Vertex>(v));
    return p;
  }

  void normalize() {
    for (auto& c : classes) std::sort(c.begin(), c.end());
  }

  bool operator==(const Partition&) const = default;
};

namespace detail {

/// Per-vertex labels; throws unless `p` covers 1..n exactly once.
inline std::vector<Label> labels_of(const Partition& p, int n) {
  std::vector<Label> out(static_cast<std::size_t>(n) + 1, Label::A);
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  std::size_t total = 0;
  for (Label l : kLabels) {
    for (Vertex v : p[l]) {
      if (v < 1 || v > n)
        throw ContractViolation("partition mentions vertex " + std::to_string(v) + " outside 1.." +
                                std::to_string(n));
      if (seen[static_cast<std::size_t>(v)])
        throw ContractViolation("vertex " + std::to_string(v) + " appears in two classes");
      seen[static_cast<std::size_t>(v)] = true;
      out[static_cast<std::size_t>(v)] = l;
      ++total;
    }
  }
  if (total != static_cast<std::size_t>(n)) throw ContractViolation("partition does not cover every vertex");
  return out;
}

inline bool pair_ok(const ModelGraph& h, const Graph& g, Vertex x, Label lx, Vertex y, Label ly) {
  auto k = h.edge(lx, ly);
  if (!k) return true;
  return (*k == EdgeKind::Full) == g.adjacent(x, y);
}

}  // namespace detail

/// Checks that `p` is an H-partition of `g`: four non-empty classes, full pairs
/// completely adjacent, dotted pairs completely nonadjacent.
inline bool verify_partition(const ModelGraph& h, const Graph& g, const Partition& p) {
  const auto labels = detail::labels_of(p, g.order());
  for (Label l : kLabels)
    if (p[l].empty()) return false;
  for (Vertex x = 1; x <= g.order(); ++x)
    for (Vertex y = x + 1; y <= g.order(); ++y)
      if (!detail::pair_ok(h, g, x, labels[static_cast<std::size_t>(x)], y,
                           labels[static_cast<std::size_t>(y)]))
        return false;
  return true;
}

/// True iff labeling q's vertices A,B,C,D satisfies every model constraint among them.
inline bool is_h_isomorphic(const ModelGraph& h, const Graph& g, const Quadruplet& q) {
  if (!q.valid_in(g)) throw ContractViolation("quadruplet " + q.to_string() + " is not valid in G");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!detail::pair_ok(h, g, q.v[static_cast<std::size_t>(i)], label_at(i),
                           q.v[static_cast<std::size_t>(j)], label_at(j)))
        return false;
  return true;
}

}  // namespace hpart

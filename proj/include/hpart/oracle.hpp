#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "hpart/errors.hpp"
#include "hpart/graph.hpp"
#include "hpart/labeling.hpp"
#include "hpart/model.hpp"
#include "hpart/partition.hpp"

namespace hpart {

struct OracleOptions {
  /// Refuse inputs with more vertices than this.
  int max_vertices = 20;
};

namespace detail {

class OracleSearch {
 public:
  OracleSearch(const ModelGraph& h, const Graph& g) : h_(h), g_(g) {
    order_.resize(static_cast<std::size_t>(g.order()));
    std::iota(order_.begin(), order_.end(), 1);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    labels_.assign(static_cast<std::size_t>(g.order()) + 1, Label::A);
  }

  std::optional<Partition> run() {
    if (g_.order() < 4) return std::nullopt;
    if (!extend(0)) return std::nullopt;
    auto p = Partition::from_labels(labels_);
    p.normalize();
    return p;
  }

 private:
  bool extend(std::size_t depth) {
    const std::size_t remaining = order_.size() - depth;
    int empty_classes = 0;
    for (int c : counts_) empty_classes += (c == 0);
    if (remaining < static_cast<std::size_t>(empty_classes)) return false;
    if (remaining == 0) return true;

    const Vertex v = order_[depth];
    for (Label l : kLabels) {
      if (!consistent(v, l, depth)) continue;
      labels_[static_cast<std::size_t>(v)] = l;
      ++counts_[static_cast<std::size_t>(index_of(l))];
      if (extend(depth + 1)) return true;
      --counts_[static_cast<std::size_t>(index_of(l))];
    }
    return false;
  }

  bool consistent(Vertex v, Label l, std::size_t depth) const {
    for (std::size_t i = 0; i < depth; ++i) {
      const Vertex y = order_[i];
      if (!pair_ok(h_, g_, v, l, y, labels_[static_cast<std::size_t>(y)])) return false;
    }
    return true;
  }

  const ModelGraph& h_;
  const Graph& g_;
  std::vector<Vertex> order_;
  std::vector<Label> labels_;
  std::array<int, 4> counts_{};
};

}  // namespace detail

/// Exhaustive backtracking decision: returns an H-partition of `g` if one exists.
inline std::optional<Partition> oracle_solve(const ModelGraph& h, const Graph& g,
                                             const OracleOptions& opts = {}) {
  if (g.order() > opts.max_vertices)
    throw ArgumentError("oracle refuses graphs with more than " + std::to_string(opts.max_vertices) +
                        " vertices");
  return detail::OracleSearch(h, g).run();
}

/// Possible sets reached from `base` by evaluating the propagation rules naively:
/// every round recomputes each non-base vertex's impossible labels from all labeled
/// vertices, then labels vertices with exactly three impossible labels. A vertex
/// whose labels are all impossible shows up with an empty set.
inline PossibleSets oracle_possible_sets(const ModelGraph& h, const Graph& g, const Quadruplet& base) {
  if (!is_h_isomorphic(h, g, base)) throw ContractViolation("base " + base.to_string() + " is not H-isomorphic");
  const int n = g.order();
  std::vector<std::optional<Label>> in_part(static_cast<std::size_t>(n) + 1);
  std::vector<bool> is_base(static_cast<std::size_t>(n) + 1, false);
  for (Label l : kLabels) {
    in_part[static_cast<std::size_t>(base[l])] = l;
    is_base[static_cast<std::size_t>(base[l])] = true;
  }

  std::vector<LabelSet> imp(static_cast<std::size_t>(n) + 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (Vertex x = 1; x <= n; ++x) {
      if (is_base[static_cast<std::size_t>(x)]) continue;
      LabelSet bad;
      for (Vertex y = 1; y <= n; ++y) {
        auto q = in_part[static_cast<std::size_t>(y)];
        if (!q) continue;
        for (Label p : kLabels) {
          if (h.full(p, *q) && !g.adjacent(x, y)) bad.insert(p);
          if (h.dotted(p, *q) && g.adjacent(x, y)) bad.insert(p);
        }
      }
      imp[static_cast<std::size_t>(x)] = bad;
    }
    for (Vertex x = 1; x <= n; ++x) {
      if (is_base[static_cast<std::size_t>(x)]) continue;
      const LabelSet ok = ~imp[static_cast<std::size_t>(x)];
      if (ok.empty()) {
        PossibleSets out;
        out[x] = ok;
        return out;
      }
      if (ok.trivial() && !in_part[static_cast<std::size_t>(x)]) {
        in_part[static_cast<std::size_t>(x)] = ok.first();
        changed = true;
      }
    }
  }

  PossibleSets out;
  for (Vertex x = 1; x <= n; ++x)
    if (!in_part[static_cast<std::size_t>(x)]) out[x] = ~imp[static_cast<std::size_t>(x)];
  return out;
}

}  // namespace hpart

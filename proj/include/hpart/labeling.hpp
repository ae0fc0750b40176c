#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "hpart/graph.hpp"
#include "hpart/label.hpp"
#include "hpart/model.hpp"
#include "hpart/partition.hpp"

namespace hpart {

/// Labels assigned so far relative to one base. Labeled vertices are done and
/// never relabeled; the base vertices carry A, B, C, D.
class PartialLabeling {
 public:
  PartialLabeling() = default;
  PartialLabeling(int n, const Quadruplet& base)
      : base_(base), labels_(static_cast<std::size_t>(n) + 1) {
    for (Label l : kLabels) assign(base[l], l);
  }

  const Quadruplet& base() const noexcept { return base_; }
  int order() const noexcept { return static_cast<int>(labels_.size()) - 1; }

  std::optional<Label> label_of(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }
  bool done(Vertex v) const { return label_of(v).has_value(); }

  void assign(Vertex v, Label l) {
    auto& slot = labels_[static_cast<std::size_t>(v)];
    if (slot && *slot != l)
      throw ContractViolation("vertex " + std::to_string(v) + " is already labeled");
    slot = l;
  }

  std::vector<Vertex> assigned() const {
    std::vector<Vertex> out;
    for (std::size_t v = 1; v < labels_.size(); ++v)
      if (labels_[v]) out.push_back(static_cast<Vertex>(v));
    return out;
  }
  std::size_t assigned_count() const {
    std::size_t c = 0;
    for (std::size_t v = 1; v < labels_.size(); ++v) c += labels_[v].has_value();
    return c;
  }

  bool operator==(const PartialLabeling&) const = default;

 private:
  Quadruplet base_;
  std::vector<std::optional<Label>> labels_;
};

/// Still-possible labels of every unlabeled vertex.
using PossibleSets = std::map<Vertex, LabelSet>;

/// Propagation stopped with no singleton left and no empty possible set.
struct Fixpoint {
  PartialLabeling labeling;
  PossibleSets possible;
};

/// Some unlabeled vertex lost every label.
struct Rejected {
  Vertex emptied = 0;
};

using PropagationOutcome = std::variant<Rejected, Fixpoint>;

inline bool is_rejected(const PropagationOutcome& o) { return std::holds_alternative<Rejected>(o); }

/// Labels P ruled out for unlabeled `v`: a full edge (P,Q) with some Q-labeled
/// vertex nonadjacent to v, or a dotted edge (P,Q) with some Q-labeled vertex adjacent to v.
inline LabelSet impossible_labels(const ModelGraph& h, const Graph& g, const PartialLabeling& pl,
                                  Vertex v) {
  if (pl.done(v)) throw ContractViolation("vertex " + std::to_string(v) + " is already labeled");
  LabelSet out;
  for (Vertex y = 1; y <= g.order(); ++y) {
    auto q = pl.label_of(y);
    if (!q) continue;
    if (g.adjacent(v, y))
      out |= h.dotted_neighbors(*q);
    else
      out |= h.full_neighbors(*q);
  }
  return out;
}

}  // namespace hpart

#pragma once

#include <vector>

#include "hpart/label.hpp"
#include "hpart/model.hpp"

namespace hpart {

/// Labels joined by a full edge to some member of `l`.
inline LabelSet n_full(const ModelGraph& h, LabelSet l) {
  LabelSet out;
  l.for_each([&](Label p) { out |= h.full_neighbors(p); });
  return out;
}

/// Labels joined by a dotted edge to some member of `l`.
inline LabelSet n_dot(const ModelGraph& h, LabelSet l) {
  LabelSet out;
  l.for_each([&](Label p) { out |= h.dotted_neighbors(p); });
  return out;
}

/// A list is conflicting when it demands both adjacency and nonadjacency to some class.
inline bool is_conflicting(const ModelGraph& h, LabelSet l) {
  return !(n_full(h, l) & n_dot(h, l)).empty();
}

/// A list is non-maximal when a strict superset imposes exactly the same constraints.
inline bool is_non_maximal(const ModelGraph& h, LabelSet l) {
  const LabelSet nf = n_full(h, l), nd = n_dot(h, l);
  for (Label p : kLabels) {
    if (l.contains(p)) continue;
    // Adding labels only grows both neighborhoods, so a single-label extension suffices.
    LabelSet wider = l | LabelSet{p};
    if (n_full(h, wider) == nf && n_dot(h, wider) == nd) return true;
  }
  return false;
}

inline LabelSet isolated_labels(const ModelGraph& h) {
  LabelSet out;
  for (Label p : kLabels)
    if (h.full_neighbors(p).empty() && h.dotted_neighbors(p).empty()) out.insert(p);
  return out;
}

/// Groups labels with identical singleton neighborhoods, ordered by smallest member.
inline std::vector<LabelSet> twin_classes(const ModelGraph& h) {
  std::vector<LabelSet> classes;
  for (Label p : kLabels) {
    bool placed = false;
    for (auto& c : classes) {
      Label rep = c.first();
      if (h.full_neighbors(rep) == h.full_neighbors(p) &&
          h.dotted_neighbors(rep) == h.dotted_neighbors(p)) {
        c.insert(p);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back(LabelSet{p});
  }
  return classes;
}

/// True when the labels split into exactly two twin pairs.
inline bool has_twin_pairs(const ModelGraph& h) {
  auto t = twin_classes(h);
  return t.size() == 2 && t[0].size() == 2 && t[1].size() == 2;
}

/// Chooses the decision procedure for `h`.
inline Strategy classify(const ModelGraph& h) {
  if (!isolated_labels(h).empty()) return Strategy::IsolatedShortcut;
  if (auto hint = h.strategy_hint()) return *hint;
  if (has_twin_pairs(h)) return Strategy::TwinLabels;
  return Strategy::Generic;
}

}  // namespace hpart

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "hpart/analysis.hpp"
#include "hpart/errors.hpp"
#include "hpart/graph.hpp"
#include "hpart/labeling.hpp"
#include "hpart/model.hpp"
#include "hpart/oracle.hpp"
#include "hpart/partition.hpp"

namespace hpart {

namespace detail {

/// Word-parallel propagation state for one base: one vertex set per label
/// holding the vertices for which that label is still possible.
class Propagator {
 public:
  Propagator(const ModelGraph& h, const Graph& g) : h_(h), g_(g), n_(g.order()) {
    const auto width = static_cast<std::size_t>(n_) + 1;
    for (Label q : kLabels) {
      kill_if_adjacent_[static_cast<std::size_t>(index_of(q))] = h.dotted_neighbors(q);
      kill_if_nonadjacent_[static_cast<std::size_t>(index_of(q))] = h.full_neighbors(q);
    }
    for (auto& s : possible_) s.resize(width);
    unlabeled_.resize(width);
    any_.resize(width);
    two_.resize(width);
    tmp_.resize(width);
    singles_.resize(width);
    labels_.assign(width, std::nullopt);
  }

  /// Starts from a base; returns false when the base already empties a vertex.
  bool start(const Quadruplet& base) {
    base_ = base;
    std::fill(labels_.begin(), labels_.end(), std::nullopt);
    unlabeled_ = g_.vertex_set();
    for (auto& s : possible_) s = unlabeled_;
    for (Label l : kLabels) apply(base[l], l);
    return !has_empty();
  }

  /// Restores a fixpoint snapshot.
  void load(const Fixpoint& fp) {
    base_ = fp.labeling.base();
    std::fill(labels_.begin(), labels_.end(), std::nullopt);
    unlabeled_.reset();
    for (auto& s : possible_) s.reset();
    for (Vertex v = 1; v <= n_; ++v) {
      if (auto l = fp.labeling.label_of(v)) labels_[static_cast<std::size_t>(v)] = l;
    }
    for (const auto& [v, set] : fp.possible) {
      unlabeled_.set(static_cast<std::size_t>(v));
      set.for_each([&](Label p) { possible_[static_cast<std::size_t>(index_of(p))].set(static_cast<std::size_t>(v)); });
    }
  }

  /// Labels v with l; returns false iff some unlabeled vertex lost every label.
  bool assign(Vertex v, Label l) {
    apply(v, l);
    return !has_empty();
  }

  /// Assigns forced singletons until none remain.
  bool run_singletons() {
    for (;;) {
      collect_counts();
      singles_ = any_;
      singles_ -= two_;
      singles_ &= unlabeled_;
      if (singles_.none()) return true;
      for (auto v = singles_.find_first(); v != VertexSet::npos; v = singles_.find_next(v)) {
        if (!unlabeled_[v]) continue;
        const LabelSet ls = possible_of(static_cast<Vertex>(v));
        if (ls.empty()) return false;
        if (!assign(static_cast<Vertex>(v), ls.first())) return false;
      }
    }
  }

  /// Twin rule: a vertex whose possible set lies inside twin pair T takes min(T).
  bool run_twin_rule(const std::vector<LabelSet>& pairs) {
    for (bool progress = true; progress;) {
      progress = false;
      for (auto v = unlabeled_.find_first(); v != VertexSet::npos; v = unlabeled_.find_next(v)) {
        const LabelSet ls = possible_of(static_cast<Vertex>(v));
        if (ls.empty()) return false;
        for (const LabelSet& t : pairs) {
          if (ls.is_subset_of(t)) {
            if (!assign(static_cast<Vertex>(v), t.first())) return false;
            progress = true;
            break;
          }
        }
      }
    }
    return true;
  }

  LabelSet possible_of(Vertex v) const {
    unsigned bits = 0;
    for (std::size_t i = 0; i < 4; ++i)
      if (possible_[i][static_cast<std::size_t>(v)]) bits |= 1u << i;
    return LabelSet::from_bits(bits);
  }

  Vertex first_empty() {
    collect_counts();
    tmp_ = unlabeled_;
    tmp_ -= any_;
    auto v = tmp_.find_first();
    return v == VertexSet::npos ? 0 : static_cast<Vertex>(v);
  }

  Fixpoint snapshot() const {
    Fixpoint fp{PartialLabeling(n_, base_), {}};
    for (Vertex v = 1; v <= n_; ++v) {
      if (auto l = labels_[static_cast<std::size_t>(v)])
        fp.labeling.assign(v, *l);
      else
        fp.possible.emplace(v, possible_of(v));
    }
    return fp;
  }

 private:
  void apply(Vertex w, Label q) {
    const auto wi = static_cast<std::size_t>(w);
    labels_[wi] = q;
    unlabeled_.reset(wi);
    const auto& row = g_.neighbors(w);
    const auto qi = static_cast<std::size_t>(index_of(q));
    for (std::size_t p = 0; p < 4; ++p) {
      auto& s = possible_[p];
      s.reset(wi);
      if (kill_if_adjacent_[qi].contains(label_at(static_cast<int>(p)))) s -= row;
      if (kill_if_nonadjacent_[qi].contains(label_at(static_cast<int>(p)))) s &= row;
    }
  }

  void collect_counts() {
    any_ = possible_[0];
    two_.reset();
    for (std::size_t p = 1; p < 4; ++p) {
      tmp_ = any_;
      tmp_ &= possible_[p];
      two_ |= tmp_;
      any_ |= possible_[p];
    }
  }

  bool has_empty() {
    collect_counts();
    return !unlabeled_.is_subset_of(any_);
  }

  const ModelGraph& h_;
  const Graph& g_;
  int n_;
  std::array<LabelSet, 4> kill_if_adjacent_{};
  std::array<LabelSet, 4> kill_if_nonadjacent_{};
  std::array<VertexSet, 4> possible_;
  VertexSet unlabeled_, any_, two_, tmp_, singles_;
  std::vector<std::optional<Label>> labels_;
  Quadruplet base_;
};

/// Calls f(base) for each H-isomorphic quadruplet in lexicographic order until f returns true.
template <class F>
bool for_each_base(const ModelGraph& h, const Graph& g, F&& f) {
  const int n = g.order();
  if (n < 4) return false;
  const auto width = static_cast<std::size_t>(n) + 1;
  const VertexSet all = g.vertex_set();

  // Narrow `cand` to vertices compatible (as label `lq`) with vertex x labeled `lp`.
  auto restrict = [&](VertexSet& cand, Vertex x, Label lp, Label lq) {
    cand.reset(static_cast<std::size_t>(x));
    if (auto k = h.edge(lp, lq)) {
      if (*k == EdgeKind::Full)
        cand &= g.neighbors(x);
      else
        cand -= g.neighbors(x);
    }
  };

  VertexSet cb(width), cc(width), cd(width), cc2(width), cd2(width), cd3(width);
  for (Vertex a = 1; a <= n; ++a) {
    cb = all;
    restrict(cb, a, Label::A, Label::B);
    cc = all;
    restrict(cc, a, Label::A, Label::C);
    cd = all;
    restrict(cd, a, Label::A, Label::D);
    for (auto b = cb.find_first(); b != VertexSet::npos; b = cb.find_next(b)) {
      cc2 = cc;
      restrict(cc2, static_cast<Vertex>(b), Label::B, Label::C);
      cd2 = cd;
      restrict(cd2, static_cast<Vertex>(b), Label::B, Label::D);
      for (auto c = cc2.find_first(); c != VertexSet::npos; c = cc2.find_next(c)) {
        cd3 = cd2;
        restrict(cd3, static_cast<Vertex>(c), Label::C, Label::D);
        for (auto d = cd3.find_first(); d != VertexSet::npos; d = cd3.find_next(d)) {
          Quadruplet q{{a, static_cast<Vertex>(b), static_cast<Vertex>(c), static_cast<Vertex>(d)}};
          if (f(q)) return true;
        }
      }
    }
  }
  return false;
}

/// First list of size >= 2 at the fixpoint that is conflicting or non-maximal;
/// propagation guarantees there is none.
inline std::optional<std::string> refined_list_violation(const ModelGraph& h, const Fixpoint& fp) {
  for (const auto& [v, ls] : fp.possible) {
    if (ls.size() < 2) continue;
    if (is_conflicting(h, ls)) return "conflicting list " + ls.to_string() + " at vertex " + std::to_string(v);
    if (is_non_maximal(h, ls)) return "non-maximal list " + ls.to_string() + " at vertex " + std::to_string(v);
  }
  return std::nullopt;
}

inline void check_refined_lists([[maybe_unused]] const ModelGraph& h, [[maybe_unused]] const Fixpoint& fp) {
#if HPART_INVARIANTS_ENABLED
  if (auto msg = refined_list_violation(h, fp)) throw ContractViolation(*msg);
#endif
}

}  // namespace detail

/// Runs impossible-label elimination and singleton assignment from `base` to a fixpoint.
inline PropagationOutcome propagate(const ModelGraph& h, const Graph& g, const Quadruplet& base) {
  if (!is_h_isomorphic(h, g, base))
    throw ContractViolation("propagate needs an H-isomorphic base, got " + base.to_string());
  detail::Propagator prop(h, g);
  if (!prop.start(base) || !prop.run_singletons()) return Rejected{prop.first_empty()};
  Fixpoint fp = prop.snapshot();
  detail::check_refined_lists(h, fp);
  return fp;
}

/// Generic finishing rule: a fixpoint certifies yes.
inline bool finish_generic(const PropagationOutcome& out) {
  if (is_rejected(out)) throw ContractViolation("finish_generic called on a rejected propagation");
  return true;
}

/// Twin-label finishing: vertices whose list lies within a twin pair take
/// the pair's first label; succeeds iff no vertex empties.
inline bool finish_twin(const ModelGraph& h, const Graph& g, const Fixpoint& fp) {
  if (fp.possible.empty()) return true;
  const auto pairs = twin_classes(h);
  if (pairs.size() != 2 || pairs[0].size() != 2 || pairs[1].size() != 2)
    throw ContractViolation("finish_twin needs a model with two twin pairs");
  detail::Propagator prop(h, g);
  prop.load(fp);
  return prop.run_twin_rule(pairs);
}

/// Labeling produced by the pair-lock rule: A wherever A is possible, else B
/// wherever B is possible; propagated labels are kept.
inline std::vector<std::optional<Label>> pairlock_labels(const Fixpoint& fp) {
  std::vector<std::optional<Label>> labels(static_cast<std::size_t>(fp.labeling.order()) + 1);
  for (Vertex v = 1; v <= fp.labeling.order(); ++v) labels[static_cast<std::size_t>(v)] = fp.labeling.label_of(v);
  for (const auto& [v, ls] : fp.possible) {
    if (ls.contains(Label::A))
      labels[static_cast<std::size_t>(v)] = Label::A;
    else if (ls.contains(Label::B))
      labels[static_cast<std::size_t>(v)] = Label::B;
  }
  return labels;
}

/// Pair-lock finishing: apply the pair-lock labeling and verify every
/// constraint between labeled vertices.
inline bool finish_pairlock(const ModelGraph& h, const Graph& g, const Fixpoint& fp) {
  const auto labels = pairlock_labels(fp);
  const int n = g.order();
  for (Vertex x = 1; x <= n; ++x) {
    const auto lx = labels[static_cast<std::size_t>(x)];
    if (!lx) continue;
    for (Vertex y = x + 1; y <= n; ++y) {
      const auto ly = labels[static_cast<std::size_t>(y)];
      if (ly && !detail::pair_ok(h, g, x, *lx, y, *ly)) return false;
    }
  }
  return true;
}

/// With an isolated model label, G is a yes-instance iff it has an H-isomorphic quadruplet.
inline bool solve_isolated(const ModelGraph& h, const Graph& g) {
  if (isolated_labels(h).empty()) throw ContractViolation("solve_isolated needs a model with an isolated label");
  return detail::for_each_base(h, g, [](const Quadruplet&) { return true; });
}

struct Decision {
  bool yes = false;
  Strategy strategy = Strategy::Generic;
  /// First base that succeeded, when the strategy enumerates bases.
  std::optional<Quadruplet> base;
};

struct SolveOptions {
  /// Overrides classify(H).
  std::optional<Strategy> strategy;
  /// Invoked on every propagation fixpoint (before the finisher runs).
  std::function<void(const Fixpoint&)> on_fixpoint;
  OracleOptions oracle;
};

/// Decides H-PARTITION for (h, g).
inline Decision solve(const ModelGraph& h, const Graph& g, const SolveOptions& opts = {}) {
  Decision d;
  d.strategy = opts.strategy.value_or(classify(h));
  if (g.order() < 4) return d;

  if (d.strategy == Strategy::OracleOnly) {
    d.yes = oracle_solve(h, g, opts.oracle).has_value();
    return d;
  }
  if (d.strategy == Strategy::IsolatedShortcut) {
    if (isolated_labels(h).empty())
      throw ContractViolation("isolated shortcut requested for a model without isolated labels");
    detail::for_each_base(h, g, [&](const Quadruplet& q) {
      d.base = q;
      return true;
    });
    d.yes = d.base.has_value();
    return d;
  }

  const auto twins = twin_classes(h);
  if (d.strategy == Strategy::TwinLabels && !has_twin_pairs(h))
    throw ContractViolation("twin strategy requested for a model without twin pairs");

  detail::Propagator prop(h, g);
  detail::Propagator finisher(h, g);
  d.yes = detail::for_each_base(h, g, [&](const Quadruplet& q) {
    if (!prop.start(q) || !prop.run_singletons()) return false;
    const Fixpoint fp = prop.snapshot();
    detail::check_refined_lists(h, fp);
    if (opts.on_fixpoint) opts.on_fixpoint(fp);
    bool ok = true;
    switch (d.strategy) {
      case Strategy::Generic: ok = true; break;
      case Strategy::TwinLabels:
        finisher.load(fp);
        ok = fp.possible.empty() || finisher.run_twin_rule(twins);
        break;
      case Strategy::PairLock: ok = finish_pairlock(h, g, fp); break;
      default: break;
    }
    if (ok) d.base = q;
    return ok;
  });
  return d;
}

namespace detail {

/// Forward-checking search over the possible sets left by propagation.
inline bool complete_labeling(Propagator& prop, const Fixpoint& fp, std::vector<Label>& out) {
  if (fp.possible.empty()) {
    for (Vertex v = 1; v <= fp.labeling.order(); ++v) out[static_cast<std::size_t>(v)] = *fp.labeling.label_of(v);
    return true;
  }
  // Branch on the vertex with the fewest options.
  auto pick = std::min_element(fp.possible.begin(), fp.possible.end(),
                               [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });
  const Vertex v = pick->first;
  const LabelSet options = pick->second;
  for (Label l : kLabels) {
    if (!options.contains(l)) continue;
    prop.load(fp);
    if (!prop.assign(v, l) || !prop.run_singletons()) continue;
    if (complete_labeling(prop, prop.snapshot(), out)) return true;
  }
  return false;
}

}  // namespace detail

/// A witness H-partition, found by backtracking over propagated possible sets.
inline std::optional<Partition> certificate(const ModelGraph& h, const Graph& g) {
  if (g.order() < 4) return std::nullopt;
  detail::Propagator prop(h, g);
  std::vector<Label> labels(static_cast<std::size_t>(g.order()) + 1, Label::A);
  const bool found = detail::for_each_base(h, g, [&](const Quadruplet& q) {
    if (!prop.start(q) || !prop.run_singletons()) return false;
    return detail::complete_labeling(prop, prop.snapshot(), labels);
  });
  if (!found) return std::nullopt;
  auto p = Partition::from_labels(labels);
  p.normalize();
  HPART_INVARIANT(verify_partition(h, g, p), "certificate failed verification");
  return p;
}

}  // namespace hpart

#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hpart/errors.hpp"
#include "hpart/label.hpp"
#include "hpart/text.hpp"

namespace hpart {

/// Decision procedure variant used for one model graph.
enum class Strategy : std::uint8_t { Generic, TwinLabels, PairLock, IsolatedShortcut, OracleOnly };

constexpr const char* to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::Generic: return "generic";
    case Strategy::TwinLabels: return "twin";
    case Strategy::PairLock: return "pairlock";
    case Strategy::IsolatedShortcut: return "isolated";
    case Strategy::OracleOnly: return "oracle";
  }
  return "?";
}

inline std::optional<Strategy> strategy_from_string(std::string_view s) noexcept {
  for (auto st : {Strategy::Generic, Strategy::TwinLabels, Strategy::PairLock,
                  Strategy::IsolatedShortcut, Strategy::OracleOnly})
    if (s == to_string(st)) return st;
  return std::nullopt;
}

struct ModelEdge {
  Label p;
  Label q;
  EdgeKind kind;
  bool operator==(const ModelEdge&) const = default;
};

/// Four-vertex model graph H whose vertex pairs are unmarked, full or dotted.
class ModelGraph {
 public:
  ModelGraph() = default;
  explicit ModelGraph(std::string name) : name_(std::move(name)) {}
  ModelGraph(std::string name, std::initializer_list<ModelEdge> edges) : name_(std::move(name)) {
    for (const auto& e : edges) add_edge(e.p, e.q, e.kind);
  }

  /// Marks pair {p,q}. Re-adding the same kind is a no-op; a different kind throws.
  void add_edge(Label p, Label q, EdgeKind kind) {
    if (p == q) throw ContractViolation("model edge needs two distinct labels");
    auto& slot = pairs_[slot_index(p, q)];
    if (slot && *slot != kind)
      throw ContractViolation(std::string("pair ") + to_char(p) + to_char(q) +
                              " is both full and dotted");
    slot = kind;
  }

  std::optional<EdgeKind> edge(Label p, Label q) const {
    if (p == q) return std::nullopt;
    return pairs_[slot_index(p, q)];
  }
  bool full(Label p, Label q) const { return edge(p, q) == EdgeKind::Full; }
  bool dotted(Label p, Label q) const { return edge(p, q) == EdgeKind::Dotted; }

  LabelSet full_neighbors(Label p) const { return neighbors(p, EdgeKind::Full); }
  LabelSet dotted_neighbors(Label p) const { return neighbors(p, EdgeKind::Dotted); }

  /// Marked pairs with p < q, in lexicographic pair order.
  std::vector<ModelEdge> edges() const {
    std::vector<ModelEdge> out;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (auto k = pairs_[slot_index(label_at(i), label_at(j))])
          out.push_back({label_at(i), label_at(j), *k});
    return out;
  }
  bool edgeless() const { return edges().empty(); }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::optional<Strategy> strategy_hint() const noexcept { return hint_; }
  void set_strategy_hint(std::optional<Strategy> s) noexcept { hint_ = s; }

  /// Structural equality (edges only; name and hint ignored).
  bool same_edges(const ModelGraph& o) const { return pairs_ == o.pairs_; }

 private:
  static constexpr int slot_index(Label p, Label q) noexcept {
    int a = index_of(p), b = index_of(q);
    if (a > b) std::swap(a, b);
    // (0,1)=0 (0,2)=1 (0,3)=2 (1,2)=3 (1,3)=4 (2,3)=5
    return a == 0 ? b - 1 : a + b;
  }

  LabelSet neighbors(Label p, EdgeKind k) const {
    LabelSet s;
    for (Label q : kLabels)
      if (q != p && pairs_[slot_index(p, q)] == k) s.insert(q);
    return s;
  }

  std::array<std::optional<EdgeKind>, 6> pairs_{};
  std::string name_;
  std::optional<Strategy> hint_;
};

/// Parses the model file format: "full x y" / "dotted x y" lines, optional
/// "name <id>" and "strategy <name>" lines, '#' comments.
inline ModelGraph parse_model(std::string_view text, std::string default_name = "") {
  ModelGraph model(std::move(default_name));
  detail::for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    auto toks = detail::split_ws(line);
    if (detail::is_comment_or_blank(toks)) return;
    const auto kw = toks[0];
    if (kw == "name") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'name <id>'");
      model.set_name(std::string(toks[1]));
      return;
    }
    if (kw == "strategy") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'strategy <name>'");
      auto s = strategy_from_string(toks[1]);
      if (!s) throw ParseError(lineno, "unknown strategy '" + std::string(toks[1]) + "'");
      model.set_strategy_hint(*s);
      return;
    }
    EdgeKind kind;
    if (kw == "full") {
      kind = EdgeKind::Full;
    } else if (kw == "dotted") {
      kind = EdgeKind::Dotted;
    } else {
      throw ParseError(lineno, "unknown keyword '" + std::string(kw) + "'");
    }
    if (toks.size() != 3) throw ParseError(lineno, "expected '<kind> <label> <label>'");
    std::optional<Label> p, q;
    if (toks[1].size() == 1) p = label_from_char(toks[1][0]);
    if (toks[2].size() == 1) q = label_from_char(toks[2][0]);
    if (!p || !q) throw ParseError(lineno, "labels must be one of a, b, c, d");
    try {
      model.add_edge(*p, *q, kind);
    } catch (const ContractViolation& e) {
      throw ParseError(lineno, e.what());
    }
  });
  return model;
}

inline std::string to_text(const ModelGraph& model) {
  std::ostringstream os;
  if (!model.name().empty()) os << "name " << model.name() << '\n';
  if (auto s = model.strategy_hint()) os << "strategy " << to_string(*s) << '\n';
  for (const auto& e : model.edges())
    os << to_string(e.kind) << ' ' << to_char(e.p) << ' ' << to_char(e.q) << '\n';
  return os.str();
}

}  // namespace hpart

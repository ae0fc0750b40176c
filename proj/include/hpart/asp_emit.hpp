#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hpart/analysis.hpp"
#include "hpart/errors.hpp"
#include "hpart/graph.hpp"
#include "hpart/model.hpp"

namespace hpart {

enum class Dialect : std::uint8_t { GuessCheck, DatalogGeneral, DatalogTwin, DatalogPairLock, DatalogNonRecursive };

constexpr const char* to_string(Dialect d) noexcept {
  switch (d) {
    case Dialect::GuessCheck: return "guess-check";
    case Dialect::DatalogGeneral: return "datalog-general";
    case Dialect::DatalogTwin: return "datalog-twin";
    case Dialect::DatalogPairLock: return "datalog-pairlock";
    case Dialect::DatalogNonRecursive: return "datalog-nonrecursive";
  }
  return "?";
}

/// Logic program text, one rule per line, ASP-Core-2 surface syntax.
struct ProgramText {
  std::string program;
  Dialect dialect = Dialect::GuessCheck;
};

/// Instance facts: vertex/1, e/2 (smaller id first), partition/1, full/2 and
/// dotted/2 in both orientations, and the adjacent/2 symmetric closure.
inline std::string emit_instance_facts(const ModelGraph& h, const Graph& g) {
  std::ostringstream os;
  for (Vertex v = 1; v <= g.order(); ++v) os << "vertex(" << v << ").\n";
  for (auto [u, v] : g.edges()) os << "e(" << u << ',' << v << ").\n";
  for (Label l : kLabels) os << "partition(" << to_char(l) << ").\n";
  for (const auto& e : h.edges()) {
    const char* kind = to_string(e.kind);
    os << kind << '(' << to_char(e.p) << ',' << to_char(e.q) << ").\n";
    os << kind << '(' << to_char(e.q) << ',' << to_char(e.p) << ").\n";
  }
  os << "adjacent(X,Y) :- e(X,Y).\n";
  os << "adjacent(X,Y) :- e(Y,X).\n";
  return os.str();
}

/// The guess-and-check program: choose one class per vertex, require every
/// class filled, forbid violated full and dotted constraints.
inline ProgramText emit_guess_check() {
  return {"1 { placedIn(X,P) : partition(P) } 1 :- vertex(X).\n"
          "filled(P) :- placedIn(X,P).\n"
          ":- partition(P), not filled(P).\n"
          ":- placedIn(X,P), placedIn(Y,Q), full(P,Q), not adjacent(X,Y).\n"
          ":- placedIn(X,P), placedIn(Y,Q), dotted(P,Q), adjacent(X,Y).\n",
          Dialect::GuessCheck};
}

namespace detail {

inline constexpr std::string_view kBaseArgs = "I,J,K,L";

inline void emit_base_rules(std::ostringstream& os) {
  os << "distinct(X,Y,Z,T) :- vertex(X), vertex(Y), vertex(Z), vertex(T), "
        "X != Y, X != Z, X != T, Y != Z, Y != T, Z != T.\n";
  os << "base(X,Y,Z,T) :- distinct(X,Y,Z,T), not problematic_base(X,Y,Z,T).\n";
  static constexpr char kVar[4] = {'X', 'Y', 'Z', 'T'};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const char p = to_char(label_at(i)), q = to_char(label_at(j));
      const char x = kVar[i], y = kVar[j];
      std::string others;
      for (int k = 0; k < 4; ++k)
        if (k != i && k != j) others += std::string(", vertex(") + kVar[k] + ")";
      os << "problematic_base(X,Y,Z,T) :- dotted(" << p << ',' << q << "), adjacent(" << x << ',' << y << ")"
         << others << ".\n";
      os << "problematic_base(X,Y,Z,T) :- full(" << p << ',' << q << "), not adjacent(" << x << ',' << y
         << "), vertex(X), vertex(Y), vertex(Z), vertex(T).\n";
    }
}

inline std::string imp(char x, Label l) {
  return std::string("imp(") + x + "," + to_char(l) + "," + std::string(kBaseArgs) + ")";
}

inline void emit_propagation_rules(std::ostringstream& os) {
  static constexpr char kBaseVar[4] = {'I', 'J', 'K', 'L'};
  for (Label l : kLabels)
    os << "inPart(" << kBaseVar[index_of(l)] << ',' << to_char(l) << ",I,J,K,L) :- base(I,J,K,L).\n";
  for (Label l : kLabels) os << "done(" << kBaseVar[index_of(l)] << ",I,J,K,L) :- base(I,J,K,L).\n";
  os << "imp(X,P,I,J,K,L) :- vertex(X), full_prob(X,P,I,J,K,L), not done(X,I,J,K,L).\n";
  os << "full_prob(X,P,I,J,K,L) :- full(P,Q), inPart(Y,Q,I,J,K,L), not adjacent(X,Y), vertex(X).\n";
  os << "imp(X,P,I,J,K,L) :- vertex(X), dot_prob(X,P,I,J,K,L), not done(X,I,J,K,L).\n";
  os << "dot_prob(X,P,I,J,K,L) :- dotted(P,Q), inPart(Y,Q,I,J,K,L), adjacent(X,Y).\n";
}

inline void emit_singleton_rules(std::ostringstream& os) {
  for (Label l : kLabels) {
    os << "inPart(X," << to_char(l) << ",I,J,K,L) :- ";
    bool first = true;
    for (Label o : kLabels) {
      if (o == l) continue;
      os << (first ? "" : ", ") << imp('X', o);
      first = false;
    }
    os << ".\n";
  }
}

inline void emit_twin_rules(std::ostringstream& os, const ModelGraph& h) {
  const auto pairs = twin_classes(h);
  if (pairs.size() != 2 || pairs[0].size() != 2 || pairs[1].size() != 2)
    throw ContractViolation("twin program needs a model with two twin pairs");
  for (int t = 0; t < 2; ++t) {
    const LabelSet mine = pairs[static_cast<std::size_t>(t)], other = pairs[static_cast<std::size_t>(1 - t)];
    os << "inPart(X," << to_char(mine.first()) << ",I,J,K,L) :- ";
    bool first = true;
    other.for_each([&](Label o) {
      os << (first ? "" : ", ") << imp('X', o);
      first = false;
    });
    os << ".\n";
  }
}

inline void emit_bad_init(std::ostringstream& os) {
  os << "bad_init(I,J,K,L) :- vertex(X), base(I,J,K,L)";
  for (Label l : kLabels) os << ", " << imp('X', l);
  os << ".\n";
}

inline void emit_pairlock_rules(std::ostringstream& os) {
  for (Label l : kLabels)
    os << "label(X," << to_char(l) << ",I,J,K,L) :- inPart(X," << to_char(l) << ",I,J,K,L).\n";
  os << "label(X,a,I,J,K,L) :- not imp(X,a,I,J,K,L), imp(X,b,I,J,K,L).\n";
  os << "label(X,b,I,J,K,L) :- imp(X,a,I,J,K,L), not imp(X,b,I,J,K,L).\n";
  os << "problem(X,P,I,J,K,L) :- label(X,P,I,J,K,L), full(P,Q), label(Y,Q,I,J,K,L), not adjacent(X,Y).\n";
  os << "problem(X,P,I,J,K,L) :- label(X,P,I,J,K,L), dotted(P,Q), label(Y,Q,I,J,K,L), adjacent(X,Y).\n";
  os << "bad_base(I,J,K,L) :- problem(X,P,I,J,K,L).\n";
}

}  // namespace detail

/// Stratified Datalog program deciding H-PARTITION with the given strategy.
inline ProgramText emit_datalog(const ModelGraph& h, Strategy strategy) {
  std::ostringstream os;
  os << "% H-partition, strategy " << to_string(strategy);
  if (!h.name().empty()) os << ", model " << h.name();
  os << "\n";
  detail::emit_base_rules(os);
  Dialect dialect;
  switch (strategy) {
    case Strategy::IsolatedShortcut:
      os << "yes_instance() :- base(I,J,K,L).\n";
      os << "no_instance() :- not yes_instance().\n";
      return {os.str(), Dialect::DatalogNonRecursive};
    case Strategy::Generic:
      dialect = Dialect::DatalogGeneral;
      detail::emit_propagation_rules(os);
      detail::emit_singleton_rules(os);
      break;
    case Strategy::TwinLabels:
      dialect = Dialect::DatalogTwin;
      detail::emit_propagation_rules(os);
      detail::emit_twin_rules(os, h);
      break;
    case Strategy::PairLock:
      dialect = Dialect::DatalogPairLock;
      detail::emit_propagation_rules(os);
      detail::emit_singleton_rules(os);
      break;
    case Strategy::OracleOnly:
    default: throw ContractViolation("strategy 'oracle' has no Datalog form");
  }
  detail::emit_bad_init(os);
  if (strategy == Strategy::PairLock) {
    detail::emit_pairlock_rules(os);
    os << "yes_instance() :- base(I,J,K,L), not bad_base(I,J,K,L), not bad_init(I,J,K,L).\n";
  } else {
    os << "yes_instance() :- base(I,J,K,L), not bad_init(I,J,K,L).\n";
  }
  os << "no_instance() :- not yes_instance().\n";
  return {os.str(), dialect};
}

// ---------------------------------------------------------------------------
// Precedence graph and stratification

struct PredicateEdge {
  std::string from;  // body predicate
  std::string to;    // head predicate
  bool negative = false;
  auto operator<=>(const PredicateEdge&) const = default;
};

struct PrecedenceGraph {
  std::set<std::string> predicates;  // "name/arity"
  std::set<PredicateEdge> edges;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Splits at top-level occurrences of `sep` (outside (), {}, []).
inline std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '{' || c == '[') ++depth;
    else if (c == ')' || c == '}' || c == ']') --depth;
    else if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

/// Statements terminated by '.', comments ('%') removed; ".." ranges kept.
inline std::vector<std::string> statements(std::string_view text) {
  std::string clean;
  bool comment = false;
  for (char c : text) {
    if (c == '\n') comment = false;
    else if (c == '%') comment = true;
    if (!comment) clean.push_back(c);
  }
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (clean[i] != '.') continue;
    const bool range = (i + 1 < clean.size() && clean[i + 1] == '.') || (i > 0 && clean[i - 1] == '.');
    if (range) continue;
    auto st = trim(std::string_view(clean).substr(start, i - start));
    if (!st.empty()) out.push_back(st);
    start = i + 1;
  }
  if (!trim(std::string_view(clean).substr(start)).empty())
    throw ParseError(0, "statement without terminating '.'");
  return out;
}

/// "name/arity" of an atom, or empty for comparisons and other built-ins.
inline std::string predicate_of(const std::string& atom) {
  std::size_t i = 0;
  while (i < atom.size() && (std::isalnum(static_cast<unsigned char>(atom[i])) || atom[i] == '_')) ++i;
  if (i == 0 || !std::islower(static_cast<unsigned char>(atom[0]))) return {};
  const std::string name = atom.substr(0, i);
  const std::string rest = trim(std::string_view(atom).substr(i));
  if (rest.empty()) return name + "/0";
  if (rest.front() != '(' || rest.back() != ')') return {};
  const std::string inner = trim(std::string_view(rest).substr(1, rest.size() - 2));
  const std::size_t arity = inner.empty() ? 0 : split_top(inner, ',').size();
  return name + "/" + std::to_string(arity);
}

}  // namespace detail

/// Builds the predicate precedence graph: one edge per body literal, from the
/// body predicate to the head predicate, marked negative when negated.
inline PrecedenceGraph precedence_graph(std::string_view program) {
  PrecedenceGraph pg;
  for (const auto& st : detail::statements(program)) {
    const auto arrow = st.find(":-");
    const std::string head = detail::trim(std::string_view(st).substr(0, arrow));
    if (head.find('{') != std::string::npos)
      throw NotApplicable("choice rule '" + st + ".' has no stratification");
    std::vector<std::string> heads;
    if (!head.empty())
      for (const auto& h : detail::split_top(head, '|')) {
        auto p = detail::predicate_of(h);
        if (p.empty()) throw ParseError(0, "cannot read head atom '" + h + "'");
        heads.push_back(p);
        pg.predicates.insert(p);
      }
    if (arrow == std::string::npos) continue;
    for (auto lit : detail::split_top(std::string_view(st).substr(arrow + 2), ',')) {
      bool negative = false;
      if (lit.rfind("not ", 0) == 0) {
        negative = true;
        lit = detail::trim(std::string_view(lit).substr(4));
      }
      const auto p = detail::predicate_of(lit);
      if (p.empty()) continue;
      pg.predicates.insert(p);
      for (const auto& h : heads) pg.edges.insert({p, h, negative});
    }
  }
  return pg;
}

/// True iff no cycle of the precedence graph passes through a negative edge.
/// Throws NotApplicable for programs with choice rules.
inline bool stratify_check(std::string_view program) {
  const auto pg = precedence_graph(program);
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& e : pg.edges) succ[e.from].push_back(e.to);

  // Tarjan's strongly connected components.
  std::map<std::string, int> index, low, comp;
  std::vector<std::string> stack;
  std::set<std::string> on_stack;
  int counter = 0, components = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : succ[v]) {
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      for (;;) {
        auto w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp[w] = components;
        if (w == v) break;
      }
      ++components;
    }
  };
  for (const auto& p : pg.predicates)
    if (!index.count(p)) visit(p);

  return std::none_of(pg.edges.begin(), pg.edges.end(),
                      [&](const PredicateEdge& e) { return e.negative && comp[e.from] == comp[e.to]; });
}

inline bool stratify_check(const ProgramText& p) {
  if (p.dialect == Dialect::GuessCheck) throw NotApplicable("guess-and-check program contains a choice rule");
  return stratify_check(p.program);
}

/// Graphviz rendering of the precedence graph; negative edges dashed.
inline std::string to_dot(const PrecedenceGraph& pg) {
  std::ostringstream os;
  os << "digraph precedence {\n";
  for (const auto& p : pg.predicates) os << "  \"" << p << "\";\n";
  for (const auto& e : pg.edges)
    os << "  \"" << e.from << "\" -> \"" << e.to << "\"" << (e.negative ? " [style=dashed]" : "") << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace hpart

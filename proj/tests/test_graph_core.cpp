#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "test_support.hpp"

using namespace hpart;
using enum Label;

namespace {

Graph k4() { return complete_graph(4); }
Graph path_1_2_3() { return Graph(4, {{1, 2}, {2, 3}}); }
Partition singletons() { return Partition{{{{1}, {2}, {3}, {4}}}}; }

}  // namespace

TEST(LabelSet, BasicAlgebra) {
  const LabelSet ab{A, B}, bc{B, C};
  EXPECT_EQ((ab | bc), (LabelSet{A, B, C}));
  EXPECT_EQ((ab & bc), LabelSet{B});
  EXPECT_EQ((ab - bc), LabelSet{A});
  EXPECT_EQ(~ab, (LabelSet{C, D}));
  EXPECT_TRUE(LabelSet{D}.trivial());
  EXPECT_FALSE(ab.trivial());
  EXPECT_EQ(LabelSet::all().size(), 4);
  EXPECT_EQ(ab.to_string(), "AB");
  EXPECT_EQ(LabelSet{}.to_string(), "{}");
}

TEST(LabelSet, CharRoundTrip) {
  for (Label l : kLabels) EXPECT_EQ(label_from_char(to_char(l)), l);
  EXPECT_FALSE(label_from_char('e').has_value());
}

TEST(ParseGraph, PathExample) {
  const Graph g = parse_graph("p 4\ne 1 2\ne 2 3");
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{1, 2}, {2, 3}}));
}

TEST(ParseGraph, LoopRejectedWithLine) {
  try {
    parse_graph("p 3\ne 1 1");
    FAIL() << "loop accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseGraph, SymmetricDuplicateCollapses) {
  const Graph g = parse_graph("p 2\ne 1 2\ne 2 1");
  EXPECT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.adjacent(2, 1));
}

TEST(ParseGraph, MalformedInputs) {
  EXPECT_THROW(parse_graph("p 3\ne 1 4"), ParseError);
  EXPECT_THROW(parse_graph("e 1 2\np 3"), ParseError);
  EXPECT_THROW(parse_graph("p 3\nx 1 2"), ParseError);
  EXPECT_THROW(parse_graph("p 3\ne 1"), ParseError);
  EXPECT_THROW(parse_graph("p 3\np 4"), ParseError);
  EXPECT_THROW(parse_graph("# nothing"), ParseError);
  EXPECT_THROW(parse_graph("p -1"), ParseError);
  EXPECT_THROW(parse_graph("p 3\ne 1 2x"), ParseError);
}

TEST(ParseGraph, CommentsAndIsolatedVertices) {
  const Graph g = parse_graph("# header\np 5\n\ne 4 5\n# trailing");
  EXPECT_EQ(g.order(), 5);
  EXPECT_EQ(g.degree(1), 0u);
  EXPECT_EQ(parse_graph("p 0").order(), 0);
}

TEST(ParseModel, M23) {
  const ModelGraph h = parse_model("full a b\nfull b c\ndotted a c\ndotted b d\ndotted c d");
  EXPECT_TRUE(h.same_edges(catalog::m23()));
  EXPECT_TRUE(h.full(B, A));
  EXPECT_TRUE(h.dotted(D, C));
  EXPECT_FALSE(h.edge(A, D).has_value());
}

TEST(ParseModel, ConflictingKinds) { EXPECT_THROW(parse_model("full a b\ndotted a b"), ParseError); }

TEST(ParseModel, EmptyIsEdgeless) { EXPECT_TRUE(parse_model("").edgeless()); }

TEST(ParseModel, Errors) {
  EXPECT_THROW(parse_model("full a e"), ParseError);
  EXPECT_THROW(parse_model("full a a"), ParseError);
  EXPECT_THROW(parse_model("solid a b"), ParseError);
  EXPECT_THROW(parse_model("strategy fastest"), ParseError);
  EXPECT_NO_THROW(parse_model("full a b\nfull b a"));
}

TEST(ParseModel, NameAndStrategy) {
  const ModelGraph h = parse_model("# c\nname custom\nstrategy pairlock\nfull a b\n");
  EXPECT_EQ(h.name(), "custom");
  EXPECT_EQ(h.strategy_hint(), Strategy::PairLock);
}

TEST(RoundTrip, ModelsSerializeAndParseBack) {
  for (const auto& h : catalog::builtins()) {
    const ModelGraph back = parse_model(to_text(h));
    EXPECT_TRUE(back.same_edges(h)) << h.name();
    EXPECT_EQ(back.name(), h.name());
    EXPECT_EQ(back.strategy_hint(), h.strategy_hint());
    EXPECT_EQ(to_text(back), to_text(h));
  }
}

TEST(RoundTrip, RandomGraphs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng() % 12);
    const Graph g = ref::random_gnp(n, 0.4, rng);
    const std::vector<std::string> header{"generated"};
    const Graph back = parse_graph(to_text(g, header));
    EXPECT_EQ(back, g);
    EXPECT_EQ(parse_graph(to_text(back)), g);
  }
}

TEST(VerifyPartition, GMinOfM23) { EXPECT_TRUE(verify_partition(catalog::m23(), path_1_2_3(), singletons())); }

TEST(VerifyPartition, K4ViolatesDotted) { EXPECT_FALSE(verify_partition(catalog::m23(), k4(), singletons())); }

TEST(VerifyPartition, EmptyClassRejected) {
  const Partition p{{{{1, 4}, {2}, {3}, {}}}};
  EXPECT_FALSE(verify_partition(catalog::edgeless(), k4(), p));
  EXPECT_FALSE(verify_partition(catalog::m23(), path_1_2_3(), p));
}

TEST(VerifyPartition, NotACoverIsContractViolation) {
  EXPECT_THROW(verify_partition(catalog::m23(), k4(), Partition{{{{1}, {2}, {3}, {}}}}), ContractViolation);
  EXPECT_THROW(verify_partition(catalog::m23(), k4(), Partition{{{{1}, {2}, {3}, {3, 4}}}}), ContractViolation);
  EXPECT_THROW(verify_partition(catalog::m23(), k4(), Partition{{{{1}, {2}, {3}, {5}}}}), ContractViolation);
}

TEST(VerifyPartition, NoConstraintInsideAClass) {
  // Two adjacent A vertices and two nonadjacent C vertices are both fine.
  const Graph g(6, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}});
  const Partition p{{{{1, 2}, {3}, {4, 5}, {6}}}};
  EXPECT_TRUE(verify_partition(catalog::m23(), g, p));
}

TEST(VerifyPartition, InvariantUnderRelabeling) {
  std::mt19937_64 rng(11);
  const ModelGraph h = catalog::m23();
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const Graph g = ref::random_gnp(n, 0.5, rng);
    std::vector<Label> lab(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) lab[static_cast<std::size_t>(v)] = label_at(static_cast<int>(rng() % 4));
    const Partition p = Partition::from_labels(lab);
    const auto perm = ref::random_permutation(n, rng);
    std::vector<Label> moved(lab.size());
    for (int v = 1; v <= n; ++v) moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = lab[static_cast<std::size_t>(v)];
    EXPECT_EQ(verify_partition(h, g, p), verify_partition(h, g.relabeled(perm), Partition::from_labels(moved)));
  }
}

TEST(HIsomorphic, Examples) {
  const Quadruplet q{{1, 2, 3, 4}};
  EXPECT_TRUE(is_h_isomorphic(catalog::m23(), path_1_2_3(), q));
  EXPECT_FALSE(is_h_isomorphic(catalog::m23(), k4(), q));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = ref::random_gnp(6, 0.5, rng);
    EXPECT_TRUE(is_h_isomorphic(catalog::edgeless(), g, Quadruplet{{6, 2, 5, 1}}));
  }
}

TEST(HIsomorphic, InvalidQuadrupletIsContractViolation) {
  EXPECT_THROW(is_h_isomorphic(catalog::m23(), k4(), Quadruplet{{1, 1, 2, 3}}), ContractViolation);
  EXPECT_THROW(is_h_isomorphic(catalog::m23(), k4(), Quadruplet{{1, 2, 3, 5}}), ContractViolation);
}

TEST(HIsomorphic, EqualsVerifyOnInducedSubgraph) {
  std::mt19937_64 rng(5);
  for (const auto& h : catalog::builtins()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Graph g = ref::random_gnp(7, 0.5, rng);
      auto perm = ref::random_permutation(7, rng);
      const Quadruplet q{{perm[1], perm[2], perm[3], perm[4]}};
      const std::vector<Vertex> vs{q.v.begin(), q.v.end()};
      EXPECT_EQ(is_h_isomorphic(h, g, q), verify_partition(h, g.induced(vs), singletons())) << h.name();
    }
  }
}

TEST(Graph, EditingContracts) {
  Graph g(3);
  EXPECT_TRUE(g.add_edge(1, 2));
  EXPECT_FALSE(g.add_edge(2, 1));
  EXPECT_THROW(g.add_edge(3, 3), ContractViolation);
  EXPECT_THROW(g.add_edge(0, 1), ContractViolation);
  EXPECT_TRUE(g.remove_edge(2, 1));
  EXPECT_FALSE(g.adjacent(1, 2));
  EXPECT_EQ(g.size(), 0u);
}

TEST(Graph, CodeEnumeratesAllGraphs) {
  std::set<std::vector<Edge>> seen;
  for (std::uint64_t code = 0; code < 64; ++code) seen.insert(graph_from_code(4, code).edges());
  EXPECT_EQ(seen.size(), 64u);
  EXPECT_EQ(graph_from_code(5, 1023), complete_graph(5));
}

TEST(Catalog, ShippedModelFilesMatchBuiltins) {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(HPART_MODELS_DIR)) {
    if (entry.path().extension() != ".model") continue;
    ++files;
    const ModelGraph h = load_model(entry.path().string());
    const auto builtin = find_builtin(h.name());
    ASSERT_TRUE(builtin.has_value()) << entry.path();
    EXPECT_EQ(entry.path().stem().string(), h.name());
    EXPECT_TRUE(h.same_edges(*builtin)) << h.name();
    EXPECT_EQ(h.strategy_hint(), builtin->strategy_hint()) << h.name();
  }
  EXPECT_EQ(files, catalog::builtins().size());
}

TEST(Catalog, LookupByNameAndFile) {
  EXPECT_EQ(load_model("m23").name(), "m23");
  EXPECT_THROW(load_model("no-such-model"), std::exception);
}

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace hpart;
using enum Label;

TEST(OracleSolve, Examples) {
  const ModelGraph h = catalog::m23();
  const Graph gmin(4, {{1, 2}, {2, 3}});
  const auto p = oracle_solve(h, gmin);
  ASSERT_TRUE(p.has_value());
  EXPECT_TRUE(verify_partition(h, gmin, *p));
  EXPECT_FALSE(oracle_solve(h, complete_graph(4)).has_value());
  const auto q = oracle_solve(catalog::edgeless(), Graph(4));
  ASSERT_TRUE(q.has_value());
  for (Label l : kLabels) EXPECT_EQ((*q)[l].size(), 1u);
}

TEST(OracleSolve, SizeCap) {
  EXPECT_THROW(oracle_solve(catalog::m23(), Graph(21)), ArgumentError);
  EXPECT_TRUE(oracle_solve(catalog::edgeless(), Graph(25), {.max_vertices = 30}).has_value());
  EXPECT_FALSE(oracle_solve(catalog::edgeless(), Graph(3)).has_value());
}

TEST(OracleSolve, AgreesWithFlatEnumeration) {
  for (const auto& h : catalog::builtins()) {
    for (std::uint64_t code = 0; code < 1024; ++code) {
      const Graph g = graph_from_code(5, code);
      const auto p = oracle_solve(h, g);
      EXPECT_EQ(p.has_value(), ref::flat_enumeration(h, g).has_value()) << h.name() << " code " << code;
      if (p) {
        EXPECT_TRUE(verify_partition(h, g, *p));
      }
    }
    for (std::uint64_t code = 0; code < 64; ++code) {
      const Graph g = graph_from_code(4, code);
      EXPECT_EQ(oracle_solve(h, g).has_value(), ref::flat_enumeration(h, g).has_value());
    }
  }
}

TEST(OracleSolve, InvariantUnderPermutation) {
  std::mt19937_64 rng(31);
  for (const auto& h : catalog::builtins())
    for (int trial = 0; trial < 60; ++trial) {
      const Graph g = ref::random_gnp(9, 0.5, rng);
      const auto perm = ref::random_permutation(9, rng);
      EXPECT_EQ(oracle_solve(h, g).has_value(), oracle_solve(h, g.relabeled(perm)).has_value());
    }
}

TEST(OraclePossibleSets, TwinExample) {
  const auto ps = oracle_possible_sets(catalog::m7(), ref::twin_example(), Quadruplet{{1, 2, 3, 4}});
  EXPECT_EQ(ps.at(5), (LabelSet{A, C}));
  EXPECT_EQ(ps.at(6), (LabelSet{B, D}));
}

TEST(OraclePossibleSets, EdgelessModelAllowsEverything) {
  std::mt19937_64 rng(37);
  const Graph g = ref::random_gnp(7, 0.5, rng);
  const auto ps = oracle_possible_sets(catalog::edgeless(), g, Quadruplet{{1, 2, 3, 4}});
  EXPECT_EQ(ps.size(), 3u);
  for (const auto& [v, ls] : ps) EXPECT_EQ(ls, LabelSet::all());
}

TEST(OraclePossibleSets, MatchPropagation) {
  std::mt19937_64 rng(41);
  for (const auto& h : catalog::builtins()) {
    int compared = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const Graph g = ref::random_gnp(8, 0.5, rng);
      detail::for_each_base(h, g, [&](const Quadruplet& q) {
        const auto ps = oracle_possible_sets(h, g, q);
        const auto out = propagate(h, g, q);
        const bool emptied = ps.size() == 1 && ps.begin()->second.empty();
        EXPECT_EQ(is_rejected(out), emptied) << h.name() << ' ' << q.to_string();
        if (!is_rejected(out)) {
          EXPECT_EQ(std::get<Fixpoint>(out).possible, ps);
        }
        ++compared;
        return compared % 7 == 0;
      });
    }
    EXPECT_GT(compared, 0) << h.name();
  }
}

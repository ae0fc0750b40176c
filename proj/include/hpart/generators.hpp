#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "hpart/analysis.hpp"
#include "hpart/errors.hpp"
#include "hpart/graph.hpp"
#include "hpart/model.hpp"
#include "hpart/partition.hpp"
#include "hpart/solver.hpp"

namespace hpart {

/// Seeded generator with platform-independent output: the mt19937_64 stream is
/// fixed by the standard, and every derived draw below is computed here rather
/// than through the implementation-defined <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  /// Box-Muller; one normal per two uniforms, no cached spare.
  double normal(double mean, double sd) {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Independent stream seed for sample `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x51ed270b27b2d1a5ull));
}

/// Numbers of vertices labeled A, B, C, D.
struct ClassSizes {
  std::array<int, 4> count{1, 1, 1, 1};

  int operator[](Label l) const { return count[static_cast<std::size_t>(index_of(l))]; }
  int total() const { return count[0] + count[1] + count[2] + count[3]; }
  bool valid() const { return std::all_of(count.begin(), count.end(), [](int c) { return c >= 1; }); }
  bool operator==(const ClassSizes&) const = default;
};

inline std::int64_t pair_count(std::int64_t n) { return n * (n - 1) / 2; }

/// Fewest edges of a graph admitting an H-partition with these class sizes.
inline std::int64_t m_min(const ModelGraph& h, const ClassSizes& s) {
  std::int64_t total = 0;
  for (const auto& e : h.edges())
    if (e.kind == EdgeKind::Full) total += static_cast<std::int64_t>(s[e.p]) * s[e.q];
  return total;
}

/// Most edges of a graph admitting an H-partition with these class sizes.
inline std::int64_t m_max(const ModelGraph& h, const ClassSizes& s) {
  std::int64_t total = pair_count(s.total());
  for (const auto& e : h.edges())
    if (e.kind == EdgeKind::Dotted) total -= static_cast<std::int64_t>(s[e.p]) * s[e.q];
  return total;
}

/// A graph together with the labeling it was built from.
struct LabeledGraph {
  Graph graph;
  Partition partition;
};

namespace detail {

/// Vertices 1..a get A, the next b get B, and so on.
inline std::vector<Label> block_labels(const ClassSizes& s) {
  std::vector<Label> labels(1, Label::A);
  for (Label l : kLabels)
    for (int i = 0; i < s[l]; ++i) labels.push_back(l);
  return labels;
}

inline void check_sizes(const ClassSizes& s) {
  if (!s.valid()) throw ArgumentError("class sizes must all be at least 1");
}

}  // namespace detail

/// Edges exactly between classes joined by a full model edge.
inline LabeledGraph build_g_min(const ModelGraph& h, const ClassSizes& s) {
  detail::check_sizes(s);
  const auto labels = detail::block_labels(s);
  Graph g(s.total());
  for (Vertex u = 1; u <= g.order(); ++u)
    for (Vertex v = u + 1; v <= g.order(); ++v)
      if (h.full(labels[static_cast<std::size_t>(u)], labels[static_cast<std::size_t>(v)])) g.add_edge(u, v);
  return {std::move(g), Partition::from_labels(labels)};
}

/// Complete graph minus edges between classes joined by a dotted model edge.
inline LabeledGraph build_g_max(const ModelGraph& h, const ClassSizes& s) {
  detail::check_sizes(s);
  const auto labels = detail::block_labels(s);
  Graph g(s.total());
  for (Vertex u = 1; u <= g.order(); ++u)
    for (Vertex v = u + 1; v <= g.order(); ++v)
      if (!h.dotted(labels[static_cast<std::size_t>(u)], labels[static_cast<std::size_t>(v)])) g.add_edge(u, v);
  return {std::move(g), Partition::from_labels(labels)};
}

/// All (a,b,c,d) with positive parts summing to n, in lexicographic order.
inline std::vector<ClassSizes> class_sizes_summing_to(int n) {
  std::vector<ClassSizes> out;
  for (int a = 1; a <= n - 3; ++a)
    for (int b = 1; a + b <= n - 2; ++b)
      for (int c = 1; a + b + c <= n - 1; ++c) out.push_back({{a, b, c, n - a - b - c}});
  return out;
}

struct YesOptions {
  /// Pick a uniformly random feasible class-size vector instead of the first one.
  bool random_sizes = false;
};

struct YesInstance {
  Graph graph;
  Partition partition;
  ClassSizes sizes;
};

/// Yes-instance with n vertices and m edges: G_min plus uniformly chosen
/// admissible edges. nullopt when no class-size vector admits m edges.
inline std::optional<YesInstance> gen_yes(const ModelGraph& h, int n, std::int64_t m, std::uint64_t seed,
                                          const YesOptions& opts = {}) {
  if (n < 4) throw ArgumentError("gen_yes needs n >= 4");
  if (m < 0) throw ArgumentError("gen_yes needs m >= 0");
  Rng rng(seed);

  std::vector<ClassSizes> feasible;
  for (const auto& s : class_sizes_summing_to(n)) {
    if (m_min(h, s) <= m && m <= m_max(h, s)) {
      feasible.push_back(s);
      if (!opts.random_sizes) break;
    }
  }
  if (feasible.empty()) return std::nullopt;
  const ClassSizes sizes = opts.random_sizes ? feasible[rng.below(feasible.size())] : feasible.front();

  auto [graph, partition] = build_g_min(h, sizes);
  const auto labels = detail::block_labels(sizes);
  std::vector<Edge> admissible;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v) {
      const Label lu = labels[static_cast<std::size_t>(u)], lv = labels[static_cast<std::size_t>(v)];
      if (!h.full(lu, lv) && !h.dotted(lu, lv)) admissible.emplace_back(u, v);
    }
  // Partial Fisher-Yates: the first k slots become a uniform k-subset.
  const auto k = static_cast<std::size_t>(m - static_cast<std::int64_t>(graph.size()));
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(admissible.size() - i);
    std::swap(admissible[i], admissible[j]);
    graph.add_edge(admissible[i].first, admissible[i].second);
  }
  return YesInstance{std::move(graph), std::move(partition), sizes};
}

/// Edgeless graph when H has a full edge, complete graph otherwise.
inline Graph gen_no_trivial(const ModelGraph& h, int n) {
  if (n < 4) throw ArgumentError("gen_no_trivial needs n >= 4");
  bool has_full = false, has_dotted = false;
  for (const auto& e : h.edges()) (e.kind == EdgeKind::Full ? has_full : has_dotted) = true;
  if (has_full) return Graph(n);
  if (has_dotted) return complete_graph(n);
  throw ArgumentError("model has no edges: every graph is a yes-instance");
}

struct DensityOptions {
  double mean = 0.5;
  double sd = 0.25;
};

/// Expected edge density: normal draw clamped to [0, 1].
inline double sample_density(Rng& rng, const DensityOptions& opts = {}) {
  return std::clamp(rng.normal(opts.mean, opts.sd), 0.0, 1.0);
}

/// Each of the n(n-1)/2 pairs, in lexicographic order, kept with probability p.
inline Graph random_graph(int n, double p, Rng& rng) {
  Graph g(n);
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (rng.uniform01() < p) g.add_edge(u, v);
  return g;
}

/// True iff g has an H-isomorphic quadruplet.
inline bool has_base(const ModelGraph& h, const Graph& g) {
  return detail::for_each_base(h, g, [](const Quadruplet&) { return true; });
}

struct RandomNoInstance {
  Graph graph;
  double density = 0;
  int tries = 0;
};

struct NoRandomOptions {
  int max_tries = 100;
  /// Also demand an H-isomorphic quadruplet so the propagation phase runs.
  bool require_base = false;
  DensityOptions density;
};

/// Draws random graphs until one is a no-instance; nullopt after max_tries.
inline std::optional<RandomNoInstance> gen_no_random(const ModelGraph& h, int n, std::uint64_t seed,
                                                     const NoRandomOptions& opts = {}) {
  if (n < 4) throw ArgumentError("gen_no_random needs n >= 4");
  if (h.edgeless()) throw ArgumentError("model has no edges: no no-instance exists");
  if (opts.max_tries < 1) throw ArgumentError("max_tries must be positive");
  Rng rng(seed);
  for (int t = 1; t <= opts.max_tries; ++t) {
    const double p = sample_density(rng, opts.density);
    Graph g = random_graph(n, p, rng);
    if (opts.require_base && !has_base(h, g)) continue;
    if (!solve(h, g).yes) return RandomNoInstance{std::move(g), p, t};
  }
  return std::nullopt;
}

struct SampleOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double density = 0;
  std::size_t edges = 0;
  bool yes = false;
};

struct ProportionResult {
  int yes = 0;
  int no = 0;
  std::vector<SampleOutcome> samples;
};

struct ProportionOptions {
  DensityOptions density;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;
};

/// One random instance of the proportion experiment, fully determined by (seed, index).
inline SampleOutcome proportion_sample(const ModelGraph& h, int n, std::uint64_t seed, std::size_t index,
                                       const DensityOptions& density = {}) {
  SampleOutcome s;
  s.index = index;
  s.seed = derive_seed(seed, index);
  Rng rng(s.seed);
  s.density = sample_density(rng, density);
  const Graph g = random_graph(n, s.density, rng);
  s.edges = g.size();
  s.yes = solve(h, g).yes;
  return s;
}

/// Counts yes/no decisions over `samples` random graphs.
inline ProportionResult proportion_experiment(const ModelGraph& h, int n, int samples, std::uint64_t seed,
                                              const ProportionOptions& opts = {}) {
  if (samples < 1) throw ArgumentError("samples must be positive");
  ProportionResult r;
  r.samples.resize(static_cast<std::size_t>(samples));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < r.samples.size(); i = next++)
      r.samples[i] = proportion_sample(h, n, seed, i, opts.density);
  };
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& s : r.samples) (s.yes ? r.yes : r.no)++;
  return r;
}

}  // namespace hpart

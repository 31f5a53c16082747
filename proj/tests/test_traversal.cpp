#include <gtest/gtest.h>

#include <deque>
#include <map>

#include "pmce/bk_core.hpp"
#include "pmce/generators.hpp"
#include "pmce/traversal.hpp"

using namespace pmce;

namespace {

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

constexpr InducedMode kModes[] = {InducedMode::Partial, InducedMode::Full};
constexpr RootLevel kLevels[] = {RootLevel::L1, RootLevel::L2};

}  // namespace

TEST(Traversal, CapacityRoundsUpToWords) {
  EXPECT_EQ(bitset_capacity_for(0), 0u);
  EXPECT_EQ(bitset_capacity_for(1), 64u);
  EXPECT_EQ(bitset_capacity_for(64), 64u);
  EXPECT_EQ(bitset_capacity_for(65), 128u);
}

TEST(Traversal, K4FromVertexZero) {
  const Graph g = complete(4);
  for (InducedMode mode : kModes) {
    SubtreeTraversal engine(g, 64);
    CliqueSink sink = CliqueSink::collecting();
    WorkerMetrics m;
    engine.run_root(first_level_root(g, 0), mode, sink, m);
    EXPECT_EQ(sink.collected(), (std::vector<Clique>{{0, 1, 2, 3}}));
    EXPECT_EQ(m.nodes_visited, 4u);
  }
}

TEST(Traversal, EmptyPRoots) {
  const Graph g = complete(3);
  SubtreeTraversal engine(g, 64);
  WorkerMetrics m;
  CliqueSink sink = CliqueSink::collecting();
  engine.run_root(first_level_root(g, 2), InducedMode::Full, sink, m);  // P empty, X = {0,1}
  EXPECT_EQ(sink.total(), 0u);
  RootTask lone;
  lone.root_vertices = {1};
  engine.run_root(lone, InducedMode::Full, sink, m);
  EXPECT_EQ(sink.collected(), (std::vector<Clique>{{1}}));
}

TEST(Traversal, CapacityErrorWhenPTooLarge) {
  const Graph g = complete(70);
  SubtreeTraversal engine(g, 64);
  WorkerMetrics m;
  CliqueSink sink = CliqueSink::counting();
  EXPECT_THROW(engine.run_root(first_level_root(g, 0), InducedMode::Full, sink, m), CapacityError);
}

TEST(Traversal, MatchesOracleOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 5 + seed % 16;
    const PreparedGraph pg = prepare(gen::gnp(n, 0.2 + 0.15 * static_cast<double>(seed % 5), seed));
    const auto truth = oracle_enumerate(pg.graph);
    for (RootLevel level : kLevels)
      for (InducedMode mode : kModes) {
        CliqueSink sink = CliqueSink::collecting();
        enumerate_roots(pg.graph, level, mode, sink);
        sink.canonicalize();
        EXPECT_EQ(sink.collected(), truth) << "seed " << seed;
      }
  }
}

TEST(Traversal, NodeCountsMatchListReference) {
  // The list-based reference picks the same pivots, so every tree, and with
  // it every node count, must agree.
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const PreparedGraph pg = prepare(gen::gnp(70, 0.1 + 0.02 * static_cast<double>(seed), seed));
    for (RootLevel level : kLevels)
      for (InducedMode mode : kModes) {
        WorkerMetrics m;
        CliqueSink a = CliqueSink::counting();
        enumerate_roots(pg.graph, level, mode, a, &m);
        SearchStats ref;
        CliqueSink b = CliqueSink::counting();
        const RootSet roots(pg.graph, level);
        for (std::size_t i = 0; i < roots.size(); ++i)
          bk_pivot_from_root(pg.graph, roots.task(i), b, &ref, mode);
        EXPECT_EQ(a.total(), b.total());
        EXPECT_EQ(m.nodes_visited, ref.nodes_visited) << "seed " << seed;
      }
  }
}

TEST(Traversal, PartialBuildsSmallerSubgraphs) {
  const PreparedGraph pg = prepare(gen::skew({2000, 6.0, 40, gen::CommunityKind::CocktailParty, 0.9, 3}));
  CliqueSink a = CliqueSink::counting(), b = CliqueSink::counting();
  EXPECT_EQ(enumerate_roots(pg.graph, RootLevel::L1, InducedMode::Partial, a),
            enumerate_roots(pg.graph, RootLevel::L1, InducedMode::Full, b));
}

namespace {

/// Donates every branch the structural gate allows, queueing the packages
/// for later replay on a second engine. Single-threaded, so fully
/// deterministic.
struct GreedyDonor {
  std::deque<DonatedTask>* queue;
  std::size_t min_p = 0;
  std::size_t offers = 0;
  bool operator()(const DonationOffer& o) {
    ++offers;
    if (o.child_p_size() == 0 || o.child_p_size() < min_p) return false;
    if (!o.sibling_remaining() || !o.shallower_remaining()) return false;
    queue->push_back(o.package());
    return true;
  }
};

}  // namespace

TEST(Traversal, DonatedPackagesReproduceTheTree) {
  std::map<std::pair<RootLevel, InducedMode>, std::size_t> donated_total;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 10 + seed % 11;
    const PreparedGraph pg = prepare(gen::gnp(n, 0.5 + 0.02 * static_cast<double>(seed % 10), seed));
    const Graph& g = pg.graph;
    const auto truth = oracle_enumerate(g);
    const std::size_t d = max_later_degree(g);
    for (RootLevel level : kLevels)
      for (InducedMode mode : kModes) {
        WorkerMetrics seq;
        CliqueSink seq_sink = CliqueSink::counting();
        enumerate_roots(g, level, mode, seq_sink, &seq);

        SubtreeTraversal donor(g, d), receiver(g, d);
        std::deque<DonatedTask> queue;
        GreedyDonor hook{&queue};
        CliqueSink sink = CliqueSink::collecting();
        WorkerMetrics m;
        std::size_t donated = 0;
        const RootSet roots(g, level);
        for (std::size_t i = 0; i < roots.size(); ++i) {
          donor.run_root(roots.task(i), mode, sink, m, hook);
          // Receivers may donate again; drain until nothing is left.
          while (!queue.empty()) {
            DonatedTask t = std::move(queue.front());
            queue.pop_front();
            ++donated;
            EXPECT_GT(t.p_bits.count(), 0u);
            EXPECT_EQ(t.subgraph->mode(), mode);
            receiver.run_donated(t, sink, m, hook);
          }
        }
        sink.canonicalize();
        EXPECT_EQ(sink.collected(), truth) << "seed " << seed;
        EXPECT_EQ(m.nodes_visited, seq.nodes_visited) << "seed " << seed;
        donated_total[{level, mode}] += donated;
      }
  }
  for (const auto& [key, n] : donated_total) EXPECT_GT(n, 0u);
  EXPECT_EQ(donated_total.size(), 4u);
}

TEST(Traversal, MinPGateSuppressesSmallDonations) {
  const PreparedGraph pg = prepare(gen::gnp(20, 0.7, 3));
  SubtreeTraversal engine(pg.graph, max_later_degree(pg.graph));
  std::deque<DonatedTask> queue;
  GreedyDonor hook{&queue, 1000};
  CliqueSink sink = CliqueSink::counting();
  WorkerMetrics m;
  const RootSet roots(pg.graph, RootLevel::L1);
  for (std::size_t i = 0; i < roots.size(); ++i) engine.run_root(roots.task(i), InducedMode::Full, sink, m, hook);
  EXPECT_TRUE(queue.empty());
  EXPECT_GT(hook.offers, 0u);
  EXPECT_EQ(sink.total(), oracle_enumerate(pg.graph).size());
}

TEST(Traversal, DepthNeverExceedsBound) {
  // A clique of size d+1 drives the traversal to its deepest level.
  const Graph g = complete(64);
  const std::size_t d = max_later_degree(g);
  SubtreeTraversal engine(g, d);
  EXPECT_EQ(engine.max_levels(), d + 2);
  EXPECT_EQ(engine.capacity(), 64u);
  CliqueSink sink = CliqueSink::counting();
  WorkerMetrics m;
  engine.run_root(first_level_root(g, 0), InducedMode::Full, sink, m);
  EXPECT_EQ(sink.total(), 1u);
}

TEST(Traversal, UnderstatedDegeneracyOverflowsDepth) {
  const Graph g = complete(4);
  SubtreeTraversal engine(g, 1);  // true degeneracy is 3
  CliqueSink sink = CliqueSink::counting();
  WorkerMetrics m;
  EXPECT_THROW(engine.run_root(first_level_root(g, 0), InducedMode::Full, sink, m), ContractViolation);
}

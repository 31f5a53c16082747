#include <gtest/gtest.h>

#include <sstream>

#include "pmce/generators.hpp"
#include "pmce/graph.hpp"

using namespace pmce;

namespace {

const std::vector<Edge> kSixVertex = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3},
                                      {2, 3}, {0, 4}, {0, 5}, {4, 5}};

Graph parse(const std::string& text, ParseOptions opts = {}) {
  std::istringstream in(text);
  return parse_edge_list(in, opts);
}

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (vertex_t i = 0; i < n; ++i) e.emplace_back(i, static_cast<vertex_t>((i + 1) % n));
  return Graph::from_edges(n, e);
}

}  // namespace

TEST(Graph, SixVertexShape) {
  const Graph g = Graph::from_edges(6, kSixVertex);
  EXPECT_EQ(g.num_vertices(), 6u);
  EXPECT_EQ(g.num_edges(), 9u);
  EXPECT_EQ(g.degree(0), 5u);
  EXPECT_TRUE(g.is_canonical());
  EXPECT_TRUE(g.has_edge(4, 5));
  EXPECT_FALSE(g.has_edge(1, 4));
}

TEST(Graph, FromEdgesCanonicalizes) {
  const std::vector<Edge> messy = {{1, 0}, {0, 1}, {2, 2}, {2, 1}, {1, 2}};
  const Graph g = Graph::from_edges(3, messy);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_TRUE(g.is_canonical());
  const auto n1 = g.neighbors(1);
  EXPECT_EQ(std::vector<vertex_t>(n1.begin(), n1.end()), (std::vector<vertex_t>{0, 2}));
}

TEST(Graph, FromEdgesRejectsOutOfRange) {
  const std::vector<Edge> bad = {{0, 3}};
  EXPECT_THROW(Graph::from_edges(3, bad), ContractViolation);
}

TEST(Graph, EmptyGraph) {
  const Graph g = Graph::from_edges(0, {});
  EXPECT_EQ(g.num_vertices(), 0u);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_TRUE(g.is_canonical());
  const auto ord = degeneracy_order(g);
  EXPECT_EQ(ord.degeneracy, 0u);
}

TEST(Graph, EdgeListSortedUpperTriangle) {
  Graph g = Graph::from_edges(6, kSixVertex);
  EXPECT_FALSE(g.has_edge_list());
  g.build_edge_list();
  ASSERT_TRUE(g.has_edge_list());
  const auto el = g.edge_list();
  EXPECT_EQ(el.size(), 9u);
  EXPECT_TRUE(std::is_sorted(el.begin(), el.end()));
  for (auto [u, v] : el) EXPECT_LT(u, v);
}

TEST(Parse, CommentsBlankLinesAndWeights) {
  const Graph g = parse("# header\n% other comment\n\n0 1 0.5\n1\t2\n2,0\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 3u);
}

TEST(Parse, CompactsSparseIdsAndKeepsLabels) {
  const Graph g = parse("10 500\n500 7\n");
  ASSERT_EQ(g.num_vertices(), 3u);
  const auto labels = g.labels();
  EXPECT_EQ(std::vector<std::int64_t>(labels.begin(), labels.end()),
            (std::vector<std::int64_t>{7, 10, 500}));
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(1, 2));
}

TEST(Parse, OneBasedRejectsZero) {
  try {
    parse("1 2\n0 1\n", ParseOptions{1});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parse, MalformedIdReportsLine) {
  try {
    parse("0 1\n# ok\n1 x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Parse, MissingSecondId) {
  EXPECT_THROW(parse("0 1\n2\n"), ParseError);
}

TEST(Parse, NegativeIdRejected) {
  EXPECT_THROW(parse("-1 2\n"), ParseError);
}

TEST(Parse, MatrixMarket) {
  const Graph g = parse(
      "%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n3 3 2\n1 2\n3 2\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.labels()[0], 1);
}

TEST(Parse, SelfLoopsAndDuplicatesDropped) {
  const Graph g = parse("0 0\n0 1\n1 0\n0 1\n");
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_TRUE(g.is_canonical());
}

TEST(Parse, WriteRoundTrip) {
  const Graph g = gen::gnp(30, 0.3, 5);
  std::ostringstream out;
  write_edge_list(out, g);
  const Graph h = parse(out.str());
  // Isolated vertices are not representable in an edge list.
  std::size_t isolated = 0;
  for (vertex_t v = 0; v < g.num_vertices(); ++v) isolated += g.degree(v) == 0;
  ASSERT_EQ(isolated, 0u);
  EXPECT_EQ(g, h);
}

TEST(Degeneracy, SixVertex) {
  const Graph g = Graph::from_edges(6, kSixVertex);
  const auto ord = degeneracy_order(g);
  EXPECT_EQ(ord.degeneracy, 3u);
  // Smallest-id tie-break: E and F go first, then A, B, C, D at degree 3.
  EXPECT_EQ(ord.order(), (std::vector<vertex_t>{4, 5, 0, 1, 2, 3}));
  const auto s = stats(g, ord);
  EXPECT_EQ(s.n, 6u);
  EXPECT_EQ(s.m, 9u);
  EXPECT_EQ(s.max_degree, 5u);
  EXPECT_EQ(s.degeneracy, 3u);
}

TEST(Degeneracy, Cycle) {
  EXPECT_EQ(degeneracy_order(cycle(8)).degeneracy, 2u);
}

TEST(Degeneracy, Complete) {
  std::vector<Edge> e;
  for (vertex_t u = 0; u < 7; ++u)
    for (vertex_t v = u + 1; v < 7; ++v) e.emplace_back(u, v);
  EXPECT_EQ(degeneracy_order(Graph::from_edges(7, e)).degeneracy, 6u);
}

TEST(Degeneracy, LaterDegreeEqualsDegeneracyAfterReorder) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen::gnp(60, 0.05 + 0.02 * static_cast<double>(seed), seed);
    const auto ord = degeneracy_order(g);
    const Graph r = reorder(g, ord);
    EXPECT_TRUE(r.is_canonical());
    EXPECT_EQ(max_later_degree(r), ord.degeneracy) << "seed " << seed;
    EXPECT_EQ(r.num_edges(), g.num_edges());
  }
}

TEST(Reorder, RelabelsAndCarriesLabels) {
  const Graph g = parse("10 20\n20 30\n30 10\n30 40\n");
  const auto ord = degeneracy_order(g);
  const Graph r = reorder(g, ord);
  for (vertex_t u = 0; u < g.num_vertices(); ++u) {
    EXPECT_EQ(r.labels()[ord.position[u]], g.labels()[u]);
    for (vertex_t v : g.neighbors(u)) EXPECT_TRUE(r.has_edge(ord.position[u], ord.position[v]));
  }
  // Relabeling with the identity leaves the graph unchanged.
  DegeneracyOrder id;
  id.position = {0, 1, 2, 3};
  EXPECT_EQ(reorder(r, id), r);
}

TEST(Reorder, RejectsNonPermutation) {
  const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
  DegeneracyOrder bad;
  bad.position = {0, 0, 1};
  EXPECT_THROW(reorder(g, bad), ContractViolation);
  bad.position = {0, 1};
  EXPECT_THROW(reorder(g, bad), ContractViolation);
}

TEST(Reorder, RebuildsEdgeList) {
  Graph g = Graph::from_edges(6, kSixVertex);
  g.build_edge_list();
  const Graph r = reorder(g, degeneracy_order(g));
  ASSERT_TRUE(r.has_edge_list());
  EXPECT_EQ(r.edge_list().size(), 9u);
  for (auto [u, v] : r.edge_list()) EXPECT_TRUE(r.has_edge(u, v));
}

TEST(Prepare, OrdersAndBuildsEdgeList) {
  const PreparedGraph pg = prepare(Graph::from_edges(6, kSixVertex));
  EXPECT_TRUE(pg.graph.has_edge_list());
  EXPECT_EQ(pg.stats.degeneracy, 3u);
  EXPECT_EQ(max_later_degree(pg.graph), 3u);
}

// Counts and lists the maximal cliques of the six-vertex example graph.

#include <algorithm>
#include <iostream>
#include <string>

#include "pmce/pmce.hpp"

int main() {
  using namespace pmce;
  const char names[] = "ABCDEF";
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3},
                                   {2, 3}, {0, 4}, {0, 5}, {4, 5}};
  const PreparedGraph pg = prepare(Graph::from_edges(6, edges));

  RunConfig cfg;
  cfg.workers = 2;
  CliqueSink sink = CliqueSink::collecting();
  const RunResult result = run(pg.graph, cfg, sink);

  std::cout << result.clique_count << " maximal cliques\n";
  for (const auto& clique : sink.collected()) {
    std::string s;
    for (vertex_t v : clique) s += names[pg.graph.labels()[v]];
    std::sort(s.begin(), s.end());
    std::cout << "  " << s << '\n';
  }
}

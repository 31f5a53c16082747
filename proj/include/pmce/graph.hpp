#pragma once

// Undirected simple graph in compressed adjacency (CSR) form, plus ingestion,
// degeneracy ordering and relabeling.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmce/errors.hpp"

namespace pmce {

using vertex_t = std::uint32_t;
using offset_t = std::uint64_t;
using Edge = std::pair<vertex_t, vertex_t>;

struct DegeneracyOrder;

class Graph {
 public:
  Graph() : row_offsets_(1, 0) {}

  /// Builds a canonical graph on [0, n): self-loops dropped, duplicates merged,
  /// every edge stored in both directions. Labels default to the identity.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::int64_t> labels = {}) {
    std::vector<Edge> dir;
    dir.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw ContractViolation("edge endpoint outside [0, n)");
      if (u == v) continue;
      dir.emplace_back(u, v);
      dir.emplace_back(v, u);
    }
    std::sort(dir.begin(), dir.end());
    dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

    Graph g;
    g.row_offsets_.assign(n + 1, 0);
    for (auto [u, v] : dir) ++g.row_offsets_[u + 1];
    std::partial_sum(g.row_offsets_.begin(), g.row_offsets_.end(), g.row_offsets_.begin());
    g.col_indices_.reserve(dir.size());
    for (auto [u, v] : dir) g.col_indices_.push_back(v);
    if (labels.empty()) {
      labels.resize(n);
      std::iota(labels.begin(), labels.end(), std::int64_t{0});
    }
    if (labels.size() != n) throw ContractViolation("label count must equal vertex count");
    g.labels_ = std::move(labels);
    return g;
  }

  std::size_t num_vertices() const noexcept { return row_offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return col_indices_.size() / 2; }

  std::span<const offset_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const vertex_t> col_indices() const noexcept { return col_indices_; }

  std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
    return {col_indices_.data() + row_offsets_[v],
            static_cast<std::size_t>(row_offsets_[v + 1] - row_offsets_[v])};
  }
  std::size_t degree(vertex_t v) const noexcept {
    return static_cast<std::size_t>(row_offsets_[v + 1] - row_offsets_[v]);
  }
  bool has_edge(vertex_t u, vertex_t v) const noexcept {
    auto nu = neighbors(u);
    return std::binary_search(nu.begin(), nu.end(), v);
  }

  /// Original (pre-compaction) id of each vertex.
  std::span<const std::int64_t> labels() const noexcept { return labels_; }

  /// Coordinate list with u < v, sorted. Needed for per-edge root enumeration.
  bool has_edge_list() const noexcept { return edge_list_built_; }
  std::span<const Edge> edge_list() const noexcept { return edge_list_; }
  void build_edge_list() {
    if (edge_list_built_) return;
    edge_list_.clear();
    edge_list_.reserve(num_edges());
    for (vertex_t u = 0; u < num_vertices(); ++u)
      for (vertex_t v : neighbors(u))
        if (u < v) edge_list_.emplace_back(u, v);
    edge_list_built_ = true;
  }

  /// Linear scan of the sortedness, loop-freedom and symmetry invariants.
  bool is_canonical() const {
    if (row_offsets_.empty() || row_offsets_.front() != 0) return false;
    if (row_offsets_.back() != col_indices_.size()) return false;
    if (col_indices_.size() % 2 != 0) return false;
    for (vertex_t u = 0; u < num_vertices(); ++u) {
      if (row_offsets_[u] > row_offsets_[u + 1]) return false;
      auto nu = neighbors(u);
      for (std::size_t i = 0; i < nu.size(); ++i) {
        if (nu[i] >= num_vertices() || nu[i] == u) return false;
        if (i > 0 && nu[i - 1] >= nu[i]) return false;
        if (!has_edge(nu[i], u)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.row_offsets_ == b.row_offsets_ && a.col_indices_ == b.col_indices_;
  }

 private:
  friend Graph reorder(const Graph&, const DegeneracyOrder&);

  std::vector<offset_t> row_offsets_;
  std::vector<vertex_t> col_indices_;
  std::vector<std::int64_t> labels_;
  std::vector<Edge> edge_list_;
  bool edge_list_built_ = false;
};

struct GraphStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t max_degree = 0;
  std::size_t degeneracy = 0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

struct DegeneracyOrder {
  /// position[v] = rank of original vertex v in the peeling order.
  std::vector<vertex_t> position;
  std::size_t degeneracy = 0;

  /// order()[r] = vertex with rank r.
  std::vector<vertex_t> order() const {
    std::vector<vertex_t> inv(position.size());
    for (vertex_t v = 0; v < position.size(); ++v) inv[position[v]] = v;
    return inv;
  }
};

struct ParseOptions {
  int base = 0;  // smallest legal vertex id in the file (0 or 1)
};

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == ','; }

inline std::string_view next_token(std::string_view& line) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) ++i;
  std::size_t j = i;
  while (j < line.size() && !is_space(line[j])) ++j;
  auto tok = line.substr(i, j - i);
  line.remove_prefix(j);
  return tok;
}

inline std::int64_t parse_id(std::string_view tok, std::size_t lineno) {
  if (tok.empty()) throw ParseError(lineno, "expected two vertex ids");
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(lineno, "malformed vertex id '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

/// Reads a whitespace-separated edge list ('#' and '%' start comments) or a
/// MatrixMarket pattern/coordinate file (detected by its banner; always
/// 1-based). Extra columns such as weights are ignored. Raw ids are
/// compacted to [0, n) in ascending order; the raw ids become the labels.
inline Graph parse_edge_list(std::istream& in, ParseOptions opts = {}) {
  if (opts.base != 0 && opts.base != 1) throw ContractViolation("base must be 0 or 1");
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t lineno = 0;
  bool size_line_pending = false;
  std::int64_t base = opts.base;

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (lineno == 1 && sv.starts_with("%%MatrixMarket")) {
      size_line_pending = true;
      base = 1;
      continue;
    }
    auto first = sv.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (sv[first] == '#' || sv[first] == '%') continue;
    if (size_line_pending) {
      size_line_pending = false;
      continue;
    }
    auto a = detail::parse_id(detail::next_token(sv), lineno);
    auto b = detail::parse_id(detail::next_token(sv), lineno);
    if (a < base || b < base)
      throw ParseError(lineno, "vertex id below base " + std::to_string(base));
    raw.emplace_back(a, b);
  }

  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [a, b] : raw) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto compact = [&](std::int64_t x) {
    return static_cast<vertex_t>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [a, b] : raw) edges.emplace_back(compact(a), compact(b));
  const std::size_t n = ids.size();
  return Graph::from_edges(n, edges, std::move(ids));
}

/// Writes the graph as "u v" lines (u < v, compacted ids).
inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (vertex_t u = 0; u < g.num_vertices(); ++u)
    for (vertex_t v : g.neighbors(u))
      if (u < v) out << u << ' ' << v << '\n';
}

/// Minimum-degree peeling. Among vertices of minimum remaining degree the
/// smallest id is removed first, so the order is fully deterministic.
inline DegeneracyOrder degeneracy_order(const Graph& g) {
  const std::size_t n = g.num_vertices();
  DegeneracyOrder ord;
  ord.position.assign(n, 0);
  std::vector<std::size_t> deg(n);
  std::vector<bool> removed(n, false);
  using Key = std::pair<std::size_t, vertex_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  for (vertex_t v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    heap.emplace(deg[v], v);
  }
  vertex_t rank = 0;
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (removed[v] || d != deg[v]) continue;  // stale entry
    removed[v] = true;
    ord.position[v] = rank++;
    ord.degeneracy = std::max(ord.degeneracy, d);
    for (vertex_t u : g.neighbors(v)) {
      if (removed[u]) continue;
      heap.emplace(--deg[u], u);
    }
  }
  return ord;
}

/// Relabels every vertex by its rank. Adjacency lists are re-sorted and
/// labels follow their vertices. An existing edge list is rebuilt.
inline Graph reorder(const Graph& g, const DegeneracyOrder& ord) {
  const std::size_t n = g.num_vertices();
  if (ord.position.size() != n) throw ContractViolation("permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (auto p : ord.position) {
    if (p >= n || seen[p]) throw ContractViolation("position is not a bijection");
    seen[p] = true;
  }
  const auto inv = ord.order();
  Graph r;
  r.row_offsets_.assign(n + 1, 0);
  for (vertex_t rank = 0; rank < n; ++rank)
    r.row_offsets_[rank + 1] = r.row_offsets_[rank] + g.degree(inv[rank]);
  r.col_indices_.resize(g.col_indices().size());
  r.labels_.resize(n);
  for (vertex_t rank = 0; rank < n; ++rank) {
    const vertex_t old = inv[rank];
    auto* out = r.col_indices_.data() + r.row_offsets_[rank];
    std::size_t k = 0;
    for (vertex_t u : g.neighbors(old)) out[k++] = ord.position[u];
    std::sort(out, out + k);
    r.labels_[rank] = g.labels()[old];
  }
  if (g.has_edge_list()) r.build_edge_list();
  return r;
}

/// max over v of |{u in N(v) : u > v}|. Equals the degeneracy on a
/// degeneracy-reordered graph.
inline std::size_t max_later_degree(const Graph& g) {
  std::size_t best = 0;
  for (vertex_t v = 0; v < g.num_vertices(); ++v) {
    auto nv = g.neighbors(v);
    auto later = static_cast<std::size_t>(nv.end() - std::upper_bound(nv.begin(), nv.end(), v));
    best = std::max(best, later);
  }
  return best;
}

inline GraphStats stats(const Graph& g, const DegeneracyOrder& ord) {
  GraphStats s;
  s.n = g.num_vertices();
  s.m = g.num_edges();
  for (vertex_t v = 0; v < s.n; ++v) s.max_degree = std::max(s.max_degree, g.degree(v));
  s.degeneracy = ord.degeneracy;
  return s;
}

}  // namespace pmce

namespace pmce {

/// A graph relabeled into degeneracy order, ready for enumeration.
struct PreparedGraph {
  Graph graph;
  DegeneracyOrder order;
  GraphStats stats;
};

/// Orders, reorders and (optionally) builds the edge list for per-edge roots.
inline PreparedGraph prepare(const Graph& g, bool with_edge_list = true) {
  PreparedGraph out;
  out.order = degeneracy_order(g);
  out.stats = stats(g, out.order);
  out.graph = reorder(g, out.order);
  if (with_edge_list) out.graph.build_edge_list();
  return out;
}

}  // namespace pmce

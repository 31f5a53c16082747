#pragma once

// Sequential Bron-Kerbosch references (plain and pivoting), independent
// first- and second-level root extraction, Tomita pivot selection over an
// induced subgraph, and a subset-enumeration oracle.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include "pmce/bitset.hpp"
#include "pmce/clique_sink.hpp"
#include "pmce/errors.hpp"
#include "pmce/graph.hpp"
#include "pmce/induced.hpp"
#include "pmce/xsets.hpp"

namespace pmce {

/// Seed of one independent subtree.
struct RootTask {
  std::vector<vertex_t> root_vertices;  // 1 (vertex root) or 2 (edge root)
  std::vector<vertex_t> p;              // ascending
  std::vector<vertex_t> x;              // ascending
  std::size_t origin_index = 0;
};

enum class RootLevel { L1, L2 };

/// Vertex root for v_i: P = later neighbors, X = earlier neighbors.
inline RootTask first_level_root(const Graph& g, vertex_t v) {
  RootTask t;
  t.root_vertices = {v};
  t.origin_index = v;
  auto nv = g.neighbors(v);
  auto split = std::upper_bound(nv.begin(), nv.end(), v);
  t.x.assign(nv.begin(), split);
  t.p.assign(split, nv.end());
  return t;
}

inline std::vector<RootTask> first_level_roots(const Graph& g) {
  std::vector<RootTask> out;
  out.reserve(g.num_vertices());
  for (vertex_t v = 0; v < g.num_vertices(); ++v) out.push_back(first_level_root(g, v));
  return out;
}

/// Edge root for edge_list()[e] = {i, j}, i < j: common neighbors after j go
/// to P, common neighbors before j go to X.
inline RootTask second_level_root(const Graph& g, std::size_t e) {
  detail::require(g.has_edge_list(), "second-level roots need the edge list");
  const auto [i, j] = g.edge_list()[e];
  RootTask t;
  t.root_vertices = {i, j};
  t.origin_index = e;
  std::vector<vertex_t> common;
  auto ni = g.neighbors(i);
  auto nj = g.neighbors(j);
  std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(), std::back_inserter(common));
  auto split = std::upper_bound(common.begin(), common.end(), j);
  t.x.assign(common.begin(), split);
  t.p.assign(split, common.end());
  return t;
}

inline std::vector<RootTask> second_level_roots(const Graph& g) {
  detail::require(g.has_edge_list(), "second-level roots need the edge list");
  std::vector<RootTask> out;
  out.reserve(g.num_edges());
  for (std::size_t e = 0; e < g.edge_list().size(); ++e) out.push_back(second_level_root(g, e));
  return out;
}

/// Edge roots never see degree-0 vertices; each is reported from its own
/// root with empty P and X. origin_index continues after the edge indices.
inline std::vector<RootTask> isolated_vertex_roots(const Graph& g) {
  std::vector<RootTask> out;
  for (vertex_t v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) != 0) continue;
    RootTask t;
    t.root_vertices = {v};
    t.origin_index = g.num_edges() + out.size();
    out.push_back(std::move(t));
  }
  return out;
}

/// Indexable root set for either level. Edge roots are followed by the
/// isolated-vertex roots.
class RootSet {
 public:
  RootSet(const Graph& g, RootLevel level) : g_(&g), level_(level) {
    if (level_ == RootLevel::L2) {
      detail::require(g.has_edge_list(), "second-level roots need the edge list");
      for (vertex_t v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == 0) isolated_.push_back(v);
    }
  }

  RootLevel level() const noexcept { return level_; }
  std::size_t size() const noexcept {
    return level_ == RootLevel::L1 ? g_->num_vertices() : g_->num_edges() + isolated_.size();
  }

  RootTask task(std::size_t index) const {
    if (level_ == RootLevel::L1) return first_level_root(*g_, static_cast<vertex_t>(index));
    if (index < g_->num_edges()) return second_level_root(*g_, index);
    RootTask t;
    t.root_vertices = {isolated_[index - g_->num_edges()]};
    t.origin_index = index;
    return t;
  }

 private:
  const Graph* g_;
  RootLevel level_;
  std::vector<vertex_t> isolated_;
};

// ---------------------------------------------------------------------------
// Pivot selection

struct Pivot {
  enum class Source { PSide, XSide };
  Source source = Source::PSide;
  std::size_t local = 0;  // P-local column for PSide, root-X index for XSide
  std::size_t score = 0;  // |N(pivot) & P|
};

/// Tomita rule: the candidate from P u X_P u X_X maximizing |N(v) & P|.
/// Ties go to the smallest local id, with P-side ids ordered before X-side
/// ids. Pass an empty `xx_view` for partial induced subgraphs.
inline Pivot select_pivot(const Bitset& p, const Bitset& xp, std::span<const xindex_t> xx_view,
                          const InducedSubgraph& h) {
  const std::size_t p_size = p.count();
  bool found = false;
  Pivot best;
  Bitset candidates(p.capacity());
  candidates.assign(p);
  candidates |= xp;
  for (std::size_t c = candidates.find_first(); c != Bitset::npos; c = candidates.find_next(c)) {
    const std::size_t s = Bitset::intersection_count(h.p_row(c), p);
    if (!found || s > best.score) {
      best = {Pivot::Source::PSide, c, s};
      found = true;
      if (s == p_size) return best;
    }
  }
  for (xindex_t j : xx_view) {
    const std::size_t s = Bitset::intersection_count(h.x_row(j), p);
    if (!found || s > best.score || (s == best.score && best.source == Pivot::Source::XSide && j < best.local)) {
      best = {Pivot::Source::XSide, j, s};
      found = true;
    }
  }
  if (!found) throw ContractViolation("pivot candidate set is empty");
  return best;
}

// ---------------------------------------------------------------------------
// Whole-graph references on sorted vertex lists

struct SearchStats {
  std::uint64_t nodes_visited = 0;
};

namespace detail {

inline std::vector<vertex_t> intersect_sorted(std::span<const vertex_t> a,
                                              std::span<const vertex_t> b) {
  std::vector<vertex_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::size_t intersection_size(std::span<const vertex_t> a, std::span<const vertex_t> b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

struct ListFrame {
  std::vector<vertex_t> p, x, branch;
  std::size_t next = 0;
};

/// Pivot candidate order. Whole-graph runs scan P u X in id order. Root runs
/// mirror the bitset engine: vertices from the root's P first (P and the
/// excluded ones alike), then, only if `root_x_candidates`, those from the
/// root's X, each group ascending.
struct PivotOrder {
  const std::vector<vertex_t>* root_p = nullptr;
  bool root_x_candidates = true;
};

/// Explicit-stack Bron-Kerbosch on sorted lists, optionally pivoting.
inline std::uint64_t bk_lists(const Graph& g, CliqueSink& sink, SearchStats* stats, bool pivot,
                              std::vector<vertex_t> p0, std::vector<vertex_t> x0,
                              std::vector<vertex_t> r, PivotOrder order = {}) {
  const std::uint64_t before = sink.total();
  std::vector<ListFrame> stack;
  const std::size_t base_depth = r.size();

  auto enter = [&](std::vector<vertex_t> p, std::vector<vertex_t> x) {
    if (stats) ++stats->nodes_visited;
    if (p.empty()) {
      if (x.empty()) sink.report(r);
      return false;
    }
    ListFrame f;
    if (pivot) {
      vertex_t best = 0;
      std::size_t best_score = 0;
      bool found = false;
      std::vector<vertex_t> cand;
      if (order.root_p == nullptr) {
        std::merge(p.begin(), p.end(), x.begin(), x.end(), std::back_inserter(cand));
      } else {
        const auto& rp = *order.root_p;
        std::vector<vertex_t> x_from_p, x_from_x;
        for (vertex_t u : x)
          (std::binary_search(rp.begin(), rp.end(), u) ? x_from_p : x_from_x).push_back(u);
        std::merge(p.begin(), p.end(), x_from_p.begin(), x_from_p.end(), std::back_inserter(cand));
        if (order.root_x_candidates) cand.insert(cand.end(), x_from_x.begin(), x_from_x.end());
      }
      for (vertex_t u : cand) {
        const std::size_t s = intersection_size(g.neighbors(u), p);
        if (!found || s > best_score) {
          best = u;
          best_score = s;
          found = true;
        }
      }
      auto nb = g.neighbors(best);
      std::set_difference(p.begin(), p.end(), nb.begin(), nb.end(), std::back_inserter(f.branch));
    } else {
      f.branch = p;
    }
    f.p = std::move(p);
    f.x = std::move(x);
    stack.push_back(std::move(f));
    return true;
  };

  enter(std::move(p0), std::move(x0));
  while (!stack.empty()) {
    auto& f = stack.back();
    if (f.next == f.branch.size()) {
      stack.pop_back();
      if (r.size() > base_depth) r.pop_back();
      continue;
    }
    const vertex_t v = f.branch[f.next++];
    auto nv = g.neighbors(v);
    auto child_p = intersect_sorted(f.p, nv);
    auto child_x = intersect_sorted(f.x, nv);
    f.p.erase(std::lower_bound(f.p.begin(), f.p.end(), v));
    f.x.insert(std::lower_bound(f.x.begin(), f.x.end(), v), v);
    r.push_back(v);
    if (!enter(std::move(child_p), std::move(child_x))) r.pop_back();
  }
  return sink.total() - before;
}

inline std::vector<vertex_t> all_vertices(const Graph& g) {
  std::vector<vertex_t> v(g.num_vertices());
  for (vertex_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace detail

/// Plain Bron-Kerbosch from R = X = {} and P = V.
inline std::uint64_t bk_basic(const Graph& g, CliqueSink& sink, SearchStats* stats = nullptr) {
  if (g.num_vertices() == 0) return 0;
  return detail::bk_lists(g, sink, stats, false, detail::all_vertices(g), {}, {});
}

/// Bron-Kerbosch with Tomita pivoting, branching only on P - N(pivot).
inline std::uint64_t bk_pivot(const Graph& g, CliqueSink& sink, SearchStats* stats = nullptr) {
  if (g.num_vertices() == 0) return 0;
  return detail::bk_lists(g, sink, stats, true, detail::all_vertices(g), {}, {});
}

/// Pivoting traversal of a single root task on sorted lists. Pivot choices
/// (and so the tree) match the bitset engine in the given induced mode.
inline std::uint64_t bk_pivot_from_root(const Graph& g, const RootTask& t, CliqueSink& sink,
                                        SearchStats* stats = nullptr,
                                        InducedMode mode = InducedMode::Full) {
  return detail::bk_lists(g, sink, stats, true, t.p, t.x, t.root_vertices,
                          {&t.p, mode == InducedMode::Full});
}

// ---------------------------------------------------------------------------
// Oracle

inline constexpr std::size_t kOracleMaxVertices = 24;

/// Every vertex subset that is a clique and cannot be extended by any other
/// vertex, sorted lexicographically. Refuses graphs above 24 vertices.
inline std::vector<Clique> oracle_enumerate(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kOracleMaxVertices) throw ContractViolation("oracle refuses graphs with n > 24");
  std::vector<std::uint32_t> adj(n, 0);
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v : g.neighbors(u)) adj[u] |= std::uint32_t{1} << v;

  std::vector<Clique> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s < limit; ++s) {
    const auto set = static_cast<std::uint32_t>(s);
    bool clique = true;
    for (std::size_t v = 0; v < n && clique; ++v) {
      if ((set >> v) & 1U) {
        const std::uint32_t others = set & ~(std::uint32_t{1} << v);
        clique = (adj[v] & others) == others;
      }
    }
    if (!clique) continue;
    bool maximal = true;
    for (std::size_t v = 0; v < n && maximal; ++v)
      if (!((set >> v) & 1U) && (adj[v] & set) == set) maximal = false;
    if (!maximal) continue;
    Clique c;
    for (std::size_t v = 0; v < n; ++v)
      if ((set >> v) & 1U) c.push_back(static_cast<vertex_t>(v));
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pmce

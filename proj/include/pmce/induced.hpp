#pragma once

// Binary-encoded induced subgraphs. Columns always range over the root's P
// vertices; rows cover P (partial mode) or P followed by X (full mode).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pmce/bitset.hpp"
#include "pmce/errors.hpp"
#include "pmce/graph.hpp"

namespace pmce {

enum class InducedMode { Partial, Full };

/// Adjacency lists longer than this multiple of the probe count are searched
/// with binary search instead of a linear merge.
inline constexpr std::size_t kGallopRatio = 16;

/// Membership probes against one sorted adjacency list. When queries arrive in
/// ascending order a forward cursor is used (merge, or galloping binary search
/// when the list is much longer than the query stream); otherwise each query
/// is an independent binary search.
class SortedMembership {
 public:
  SortedMembership(std::span<const vertex_t> adjacency, std::size_t expected_queries,
                   bool ascending_queries)
      : adj_(adjacency),
        ascending_(ascending_queries),
        gallop_(!ascending_queries ||
                adjacency.size() > kGallopRatio * std::max<std::size_t>(expected_queries, 1)) {}

  bool contains(vertex_t x) {
    if (!ascending_) return std::binary_search(adj_.begin(), adj_.end(), x);
    if (gallop_) {
      cursor_ = static_cast<std::size_t>(
          std::lower_bound(adj_.begin() + static_cast<std::ptrdiff_t>(cursor_), adj_.end(), x) -
          adj_.begin());
    } else {
      while (cursor_ < adj_.size() && adj_[cursor_] < x) ++cursor_;
    }
    return cursor_ < adj_.size() && adj_[cursor_] == x;
  }

 private:
  std::span<const vertex_t> adj_;
  std::size_t cursor_ = 0;
  bool ascending_;
  bool gallop_;
};

class InducedSubgraph {
 public:
  InducedMode mode() const noexcept { return mode_; }
  std::size_t capacity() const noexcept { return capacity_; }

  /// local P column -> global id, strictly ascending.
  std::span<const vertex_t> p_locals() const noexcept { return p_locals_; }
  /// local X index -> global id, ascending. Kept in both modes so partial
  /// traversals can consult the original graph for X-side adjacency.
  std::span<const vertex_t> x_locals() const noexcept { return x_locals_; }

  std::size_t num_rows() const noexcept { return rows_.size(); }
  const Bitset& row(std::size_t r) const { return rows_.at(r); }
  /// Row of P vertex `c` over the P columns.
  const Bitset& p_row(std::size_t c) const noexcept { return rows_[c]; }
  /// Row of X vertex `j` over the P columns. Full mode only.
  const Bitset& x_row(std::size_t j) const noexcept { return rows_[p_locals_.size() + j]; }

  std::size_t allocated_bytes() const noexcept {
    std::size_t b = (p_locals_.size() + x_locals_.size()) * sizeof(vertex_t);
    for (const auto& r : rows_) b += r.allocated_bytes();
    return b;
  }

 private:
  friend InducedSubgraph build_full(const Graph&, std::span<const vertex_t>,
                                    std::span<const vertex_t>, std::size_t);
  friend InducedSubgraph build_partial(const Graph&, std::span<const vertex_t>,
                                       std::span<const vertex_t>, std::size_t);

  static InducedSubgraph make(InducedMode mode, const Graph& g, std::span<const vertex_t> p,
                              std::span<const vertex_t> x, std::size_t capacity) {
    if (p.size() > capacity)
      throw CapacityError("candidate set of size " + std::to_string(p.size()) +
                          " exceeds bitset capacity " + std::to_string(capacity));
    detail::require(std::adjacent_find(p.begin(), p.end(), std::greater_equal<>()) == p.end(),
                    "P must be strictly ascending");
    detail::require(std::adjacent_find(x.begin(), x.end(), std::greater_equal<>()) == x.end(),
                    "X must be strictly ascending");

    InducedSubgraph h;
    h.mode_ = mode;
    h.capacity_ = capacity;
    h.p_locals_.assign(p.begin(), p.end());
    h.x_locals_.assign(x.begin(), x.end());
    const std::size_t nrows = p.size() + (mode == InducedMode::Full ? x.size() : 0);
    h.rows_.assign(nrows, Bitset(capacity));
    for (std::size_t r = 0; r < nrows; ++r) {
      const vertex_t u = r < p.size() ? p[r] : x[r - p.size()];
      fill_row(g.neighbors(u), p, h.rows_[r]);
    }
    return h;
  }

  static void fill_row(std::span<const vertex_t> adj, std::span<const vertex_t> p, Bitset& row) {
    if (adj.size() > kGallopRatio * std::max<std::size_t>(p.size(), 1)) {
      for (std::size_t c = 0; c < p.size(); ++c)
        if (std::binary_search(adj.begin(), adj.end(), p[c])) row.set(c);
      return;
    }
    std::size_t i = 0, c = 0;
    while (i < adj.size() && c < p.size()) {
      if (adj[i] < p[c]) {
        ++i;
      } else if (p[c] < adj[i]) {
        ++c;
      } else {
        row.set(c);
        ++i;
        ++c;
      }
    }
  }

  InducedMode mode_ = InducedMode::Full;
  std::size_t capacity_ = 0;
  std::vector<vertex_t> p_locals_;
  std::vector<vertex_t> x_locals_;
  std::vector<Bitset> rows_;
};

/// Rows for P and X over P columns: every edge between P and P u X.
inline InducedSubgraph build_full(const Graph& g, std::span<const vertex_t> p,
                                  std::span<const vertex_t> x, std::size_t capacity) {
  return InducedSubgraph::make(InducedMode::Full, g, p, x, capacity);
}

/// Rows for P only. `x` is recorded but not materialized.
inline InducedSubgraph build_partial(const Graph& g, std::span<const vertex_t> p,
                                     std::span<const vertex_t> x, std::size_t capacity) {
  return InducedSubgraph::make(InducedMode::Partial, g, p, x, capacity);
}

inline InducedSubgraph build_partial(const Graph& g, std::span<const vertex_t> p,
                                     std::size_t capacity) {
  return build_partial(g, p, {}, capacity);
}

/// Members of `view` adjacent to `v` in the original graph, in view order.
inline std::vector<vertex_t> x_neighbors_original(const Graph& g, vertex_t v,
                                                  std::span<const vertex_t> view) {
  std::vector<vertex_t> out;
  SortedMembership probe(g.neighbors(v), view.size(), std::is_sorted(view.begin(), view.end()));
  for (vertex_t x : view)
    if (probe.contains(x)) out.push_back(x);
  return out;
}

}  // namespace pmce

#pragma once

// Iterative pivoting Bron-Kerbosch over one binary-encoded induced subgraph.
//
// Each worker owns one SubtreeTraversal. Per level it keeps the P bitset and
// the set of branch vertices still to visit; X lives in an XState. Before
// descending into a branch the engine offers it to a donation hook, which
// may hand the branch to another worker instead.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pmce/bitset.hpp"
#include "pmce/bk_core.hpp"
#include "pmce/clique_sink.hpp"
#include "pmce/errors.hpp"
#include "pmce/graph.hpp"
#include "pmce/induced.hpp"
#include "pmce/metrics.hpp"
#include "pmce/xsets.hpp"

namespace pmce {

/// Bitset width for a run: the degeneracy rounded up to a whole word.
inline std::size_t bitset_capacity_for(std::size_t degeneracy) {
  return Bitset::words_for(degeneracy) * Bitset::kWordBits;
}

/// A branch handed from a donor to a receiver: everything needed to resume
/// traversal at one node of the donor's tree.
struct DonatedTask {
  std::vector<vertex_t> r;                       // global ids
  std::size_t level = 0;                         // depth of the node in the root's tree
  Bitset p_bits;                                 // over the subgraph's P columns
  Bitset xp_bits;
  std::vector<xindex_t> xx_prefix;               // surviving root-X indices
  std::shared_ptr<const InducedSubgraph> subgraph;
  std::size_t root_origin = 0;
};

class SubtreeTraversal;

/// View handed to the donation hook for the branch about to be visited.
class DonationOffer {
 public:
  std::size_t child_p_size() const noexcept { return child_p_size_; }
  /// Another branch vertex remains at the current level.
  bool sibling_remaining() const;
  /// Some shallower level still has an unvisited branch vertex.
  bool shallower_remaining() const;
  std::size_t level() const noexcept { return level_; }
  /// Deep-copies the child node's state. The subgraph is shared.
  DonatedTask package() const;

 private:
  friend class SubtreeTraversal;
  DonationOffer(const SubtreeTraversal& t, std::size_t level, std::size_t v, std::size_t child_p_size)
      : t_(t), level_(level), v_(v), child_p_size_(child_p_size) {}

  const SubtreeTraversal& t_;
  std::size_t level_;
  std::size_t v_;
  std::size_t child_p_size_;
};

struct NoDonation {
  bool operator()(const DonationOffer&) const noexcept { return false; }
};

class SubtreeTraversal {
 public:
  /// `degeneracy` bounds every root's P, so it fixes both the bitset width
  /// and the depth: a node at depth L has |P| <= d - L.
  SubtreeTraversal(const Graph& g, std::size_t degeneracy)
      : g_(&g),
        capacity_(bitset_capacity_for(degeneracy)),
        levels_(degeneracy + 2),
        p_(levels_, Bitset(capacity_)),
        branch_(levels_, Bitset(capacity_)),
        child_p_(capacity_),
        child_xp_(capacity_),
        xs_(capacity_, levels_) {
    r_.reserve(levels_ + 2);
  }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t max_levels() const noexcept { return levels_; }
  const XState& xstate() const noexcept { return xs_; }

  /// Builds the root's induced subgraph and traverses its whole subtree,
  /// minus any branches the hook takes.
  template <typename Hook = NoDonation>
  void run_root(const RootTask& task, InducedMode mode, CliqueSink& sink, WorkerMetrics& m,
                Hook&& hook = {}) {
    {
      ScopedTimer t(m, TimeCategory::InducedBuild);
      h_ = std::make_shared<const InducedSubgraph>(
          mode == InducedMode::Full ? build_full(*g_, task.p, task.x, capacity_)
                                    : build_partial(*g_, task.p, task.x, capacity_));
    }
    origin_ = task.origin_index;
    base_level_ = 0;
    r_.assign(task.root_vertices.begin(), task.root_vertices.end());
    p_[0].clear();
    for (std::size_t c = 0; c < task.p.size(); ++c) p_[0].set(c);
    root_x_.resize(task.x.size());
    for (std::size_t j = 0; j < root_x_.size(); ++j) root_x_[j] = static_cast<xindex_t>(j);
    xs_.init(root_x_);
    traverse(sink, m, hook);
  }

  /// Resumes traversal at a donated node.
  template <typename Hook = NoDonation>
  void run_donated(const DonatedTask& task, CliqueSink& sink, WorkerMetrics& m, Hook&& hook = {}) {
    detail::require(task.subgraph != nullptr, "donated task without subgraph");
    detail::require(task.p_bits.capacity() == capacity_, "donated task capacity mismatch");
    h_ = task.subgraph;
    origin_ = task.root_origin;
    base_level_ = task.level;
    r_.assign(task.r.begin(), task.r.end());
    p_[0].assign(task.p_bits);
    xs_.init(task.xx_prefix, &task.xp_bits);
    traverse(sink, m, hook);
  }

 private:
  friend class DonationOffer;

  const Bitset& row_of(const Pivot& pv) const noexcept {
    return pv.source == Pivot::Source::PSide ? h_->p_row(pv.local) : h_->x_row(pv.local);
  }

  /// Calls f(x) -> bool for every member of the current X_X prefix, in prefix
  /// order, with f's argument adjacent to P-local vertex v.
  template <typename F>
  void for_each_xx_adjacency(std::size_t v, F&& f) const {
    auto prefix = xs_.xx_prefix();
    if (prefix.empty()) return;
    if (h_->mode() == InducedMode::Full) {
      for (xindex_t x : prefix) f(x, h_->x_row(x).test(v));
      return;
    }
    const auto xl = h_->x_locals();
    SortedMembership probe(g_->neighbors(h_->p_locals()[v]), prefix.size(),
                           std::is_sorted(prefix.begin(), prefix.end()));
    for (xindex_t x : prefix) f(x, probe.contains(xl[x]));
  }

  /// Visits the node at the current depth. Returns true when it has branches.
  bool enter(CliqueSink& sink, WorkerMetrics& m) {
    m.record(Counter::NodesVisited);
    const std::size_t level = xs_.depth();
    const Bitset& p = p_[level];
    if (p.none()) {
      if (xs_.x_empty()) sink.report(r_);
      return false;
    }
    ScopedTimer t(m, TimeCategory::Pivot);
    const auto xx_view = h_->mode() == InducedMode::Full ? xs_.xx_prefix() : std::span<const xindex_t>{};
    const Pivot pv = select_pivot(p, xs_.xp(), xx_view, *h_);
    branch_[level].assign_andnot(p, row_of(pv));
    return true;
  }

  template <typename Hook>
  void traverse(CliqueSink& sink, WorkerMetrics& m, Hook& hook) {
    if (!enter(sink, m)) return;
    while (true) {
      const std::size_t level = xs_.depth();
      const std::size_t v = branch_[level].pop_first();
      if (v == Bitset::npos) {
        if (level == 0) return;
        xs_.backtrack();
        r_.pop_back();
        continue;
      }
      const Bitset& vrow = h_->p_row(v);
      std::size_t child_p_size;
      {
        ScopedTimer t(m, TimeCategory::SetOps);
        child_p_.assign_and(p_[level], vrow);
        child_xp_.assign_and(xs_.xp(), vrow);
        child_p_size = child_p_.count();
      }
      const bool donated = hook(DonationOffer(*this, level, v, child_p_size));
      p_[level].reset(v);
      xs_.move_branch_vertex(v);
      if (donated) continue;
      {
        ScopedTimer t(m, TimeCategory::SetOps);
        if (xs_.xx_prefix().empty()) {
          xs_.descend(child_xp_, [](xindex_t) { return false; });
        } else if (h_->mode() == InducedMode::Full) {
          xs_.descend(child_xp_, [&](xindex_t x) { return h_->x_row(x).test(v); });
        } else {
          auto prefix = xs_.xx_prefix();
          const auto xl = h_->x_locals();
          SortedMembership probe(g_->neighbors(h_->p_locals()[v]), prefix.size(),
                                 std::is_sorted(prefix.begin(), prefix.end()));
          xs_.descend(child_xp_, [&](xindex_t x) { return probe.contains(xl[x]); });
        }
      }
      p_[level + 1].assign(child_p_);
      r_.push_back(h_->p_locals()[v]);
      if (!enter(sink, m)) {
        xs_.backtrack();
        r_.pop_back();
      }
    }
  }

  const Graph* g_;
  std::size_t capacity_;
  std::size_t levels_;
  std::vector<Bitset> p_;
  std::vector<Bitset> branch_;
  Bitset child_p_;
  Bitset child_xp_;
  XState xs_;
  std::vector<vertex_t> r_;
  std::vector<xindex_t> root_x_;
  std::shared_ptr<const InducedSubgraph> h_;
  std::size_t origin_ = 0;
  std::size_t base_level_ = 0;
};

inline bool DonationOffer::sibling_remaining() const { return t_.branch_[level_].any(); }

inline bool DonationOffer::shallower_remaining() const {
  for (std::size_t l = 0; l < level_; ++l)
    if (t_.branch_[l].any()) return true;
  return false;
}

inline DonatedTask DonationOffer::package() const {
  DonatedTask d;
  d.r = t_.r_;
  d.r.push_back(t_.h_->p_locals()[v_]);
  d.level = t_.base_level_ + level_ + 1;
  d.p_bits = t_.child_p_;
  d.xp_bits = t_.child_xp_;
  t_.for_each_xx_adjacency(v_, [&](xindex_t x, bool adjacent) {
    if (adjacent) d.xx_prefix.push_back(x);
  });
  d.subgraph = t_.h_;
  d.root_origin = t_.origin_;
  return d;
}

/// Single-threaded traversal of every root at one level, in index order.
/// The graph must already be degeneracy-reordered; the engine is sized from
/// its largest later-neighbor count.
inline std::uint64_t enumerate_roots(const Graph& g, RootLevel level, InducedMode mode,
                                     CliqueSink& sink, WorkerMetrics* metrics = nullptr) {
  WorkerMetrics local;
  WorkerMetrics& m = metrics ? *metrics : local;
  const std::uint64_t before = sink.total();
  SubtreeTraversal engine(g, max_later_degree(g));
  RootSet roots(g, level);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    m.record(Counter::RootsClaimed);
    engine.run_root(roots.task(i), mode, sink, m);
  }
  return sink.total() - before;
}

}  // namespace pmce

#pragma once

// Split representation of the excluded set X.
//
// X_P holds excluded vertices that came from the root's P. It can grow and
// shrink, so every level keeps its own bitset (an entry snapshot plus a
// working copy that accumulates finished siblings). X_X holds excluded
// vertices from the root's X. It only shrinks while descending, so all levels
// share one array: level L owns the prefix xx[0, lpX[L]). Descending
// partitions the current prefix so survivors come first; backtracking only
// lowers the depth because the parent's prefix still holds the same members.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pmce/bitset.hpp"
#include "pmce/errors.hpp"

namespace pmce {

/// Entries of the shared X_X array. They index the root's X list.
using xindex_t = std::uint32_t;

class XState {
 public:
  XState() = default;

  /// `capacity` is the P bitset width; `max_levels` bounds the depth (d + 2).
  XState(std::size_t capacity, std::size_t max_levels)
      : xp_snapshot_(max_levels, Bitset(capacity)),
        xp_working_(max_levels, Bitset(capacity)),
        lpx_(max_levels, 0) {}

  std::size_t capacity() const noexcept {
    return xp_working_.empty() ? 0 : xp_working_.front().capacity();
  }
  std::size_t max_levels() const noexcept { return lpx_.size(); }
  std::size_t depth() const noexcept { return depth_; }

  /// Level-0 state: X_P empty (or `initial_xp` for a donated node) and the
  /// root X as the whole X_X array.
  void init(std::span<const xindex_t> root_x, const Bitset* initial_xp = nullptr) {
    detail::require(!lpx_.empty(), "XState has no levels");
    xx_.assign(root_x.begin(), root_x.end());
    scratch_.resize(xx_.size());
    depth_ = 0;
    lpx_[0] = xx_.size();
    if (initial_xp != nullptr) {
      xp_snapshot_[0].assign(*initial_xp);
    } else {
      xp_snapshot_[0].clear();
    }
    xp_working_[0].assign(xp_snapshot_[0]);
  }

  /// Enters the child level. `xp_next` is the child's X_P, already computed
  /// by the caller as working X_P intersected with N(v). `adjacent(x)` is
  /// called once per member of the current X_X prefix, in prefix order, and
  /// decides whether x survives into the child. The partition is stable.
  template <typename Pred>
  void descend(const Bitset& xp_next, Pred&& adjacent) {
    if (depth_ + 1 >= lpx_.size()) throw ContractViolation("XState depth overflow");
    const std::size_t end = lpx_[depth_];
    std::size_t kept = 0;
    std::size_t dropped = end;
    // Survivors fill scratch from the front, the rest from the back (reversed),
    // then both runs are copied back with the dropped run restored to order.
    for (std::size_t i = 0; i < end; ++i) {
      const xindex_t x = xx_[i];
      if (adjacent(x)) {
        scratch_[kept++] = x;
      } else {
        scratch_[--dropped] = x;
      }
    }
    std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(kept), xx_.begin());
    std::reverse_copy(scratch_.begin() + static_cast<std::ptrdiff_t>(kept),
                      scratch_.begin() + static_cast<std::ptrdiff_t>(end),
                      xx_.begin() + static_cast<std::ptrdiff_t>(kept));
    ++depth_;
    lpx_[depth_] = kept;
    xp_snapshot_[depth_].assign(xp_next);
    xp_working_[depth_].assign(xp_next);
  }

  void backtrack() {
    if (depth_ == 0) throw ContractViolation("XState depth underflow");
    --depth_;
  }

  /// True iff both parts of X are empty at the current level.
  bool x_empty() const noexcept { return lpx_[depth_] == 0 && xp_working_[depth_].none(); }

  /// X = X u {v} for a finished branch vertex v (a P-local id).
  void move_branch_vertex(std::size_t v) { xp_working_[depth_].set(v); }

  const Bitset& xp() const noexcept { return xp_working_[depth_]; }
  const Bitset& xp_at_entry() const noexcept { return xp_snapshot_[depth_]; }
  std::size_t lpx(std::size_t level) const { return lpx_.at(level); }
  std::span<const xindex_t> xx_prefix() const noexcept {
    return {xx_.data(), lpx_[depth_]};
  }
  std::span<const xindex_t> xx_all() const noexcept { return xx_; }

  /// Bytes held by this state: one X_X array (plus its partition scratch),
  /// the level pointers and two X_P bitsets per level.
  std::size_t allocated_bytes() const noexcept {
    std::size_t b = (xx_.capacity() + scratch_.capacity()) * sizeof(xindex_t);
    b += lpx_.size() * sizeof(std::size_t);
    for (const auto& s : xp_snapshot_) b += s.allocated_bytes();
    for (const auto& s : xp_working_) b += s.allocated_bytes();
    return b;
  }

 private:
  std::vector<Bitset> xp_snapshot_;
  std::vector<Bitset> xp_working_;
  std::vector<xindex_t> xx_;
  std::vector<xindex_t> scratch_;
  std::vector<std::size_t> lpx_;
  std::size_t depth_ = 0;
};

}  // namespace pmce

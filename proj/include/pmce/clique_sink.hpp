#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "pmce/graph.hpp"

namespace pmce {

using Clique = std::vector<vertex_t>;

/// Receives maximal cliques. Counting is always exact; collection keeps at
/// most `limit` cliques, each stored sorted.
class CliqueSink {
 public:
  enum class Mode { Count, Collect };
  static constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

  CliqueSink() = default;
  static CliqueSink counting() { return CliqueSink(Mode::Count, 0); }
  static CliqueSink collecting(std::size_t limit = kUnlimited) {
    return CliqueSink(Mode::Collect, limit);
  }

  Mode mode() const noexcept { return mode_; }
  std::size_t limit() const noexcept { return limit_; }
  std::uint64_t total() const noexcept { return total_; }
  const std::vector<Clique>& collected() const noexcept { return collected_; }

  void report(std::span<const vertex_t> r) {
    ++total_;
    if (mode_ == Mode::Collect && collected_.size() < limit_) {
      Clique c(r.begin(), r.end());
      std::sort(c.begin(), c.end());
      collected_.push_back(std::move(c));
    }
  }

  /// A sink with this sink's mode and limit but no content.
  CliqueSink empty_like() const { return CliqueSink(mode_, limit_); }

  void merge(CliqueSink&& other) {
    total_ += other.total_;
    for (auto& c : other.collected_) {
      if (collected_.size() >= limit_) break;
      collected_.push_back(std::move(c));
    }
    other.collected_.clear();
  }

  /// Sorts collected cliques lexicographically.
  void canonicalize() { std::sort(collected_.begin(), collected_.end()); }

 private:
  CliqueSink(Mode mode, std::size_t limit) : mode_(mode), limit_(limit) {}

  Mode mode_ = Mode::Count;
  std::size_t limit_ = 0;
  std::uint64_t total_ = 0;
  std::vector<Clique> collected_;
};

}  // namespace pmce

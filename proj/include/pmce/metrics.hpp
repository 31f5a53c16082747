#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <string_view>

namespace pmce {

enum class TimeCategory : std::size_t { InducedBuild, Pivot, SetOps, WorkerListOps, Other };
inline constexpr std::size_t kTimeCategories = 5;

inline constexpr std::array<std::string_view, kTimeCategories> kTimeCategoryNames = {
    "induced_build", "pivot", "set_ops", "worker_list_ops", "other"};

enum class Counter { NodesVisited, DonationsMade, DonationsReceived, RootsClaimed };

/// Worker-private counters. Nothing here is shared while a run is active.
struct WorkerMetrics {
  bool enabled = true;
  bool timing = false;  // category timers; off unless asked for

  std::uint64_t nodes_visited = 0;
  std::uint64_t donations_made = 0;
  std::uint64_t donations_received = 0;
  std::uint64_t roots_claimed = 0;
  std::array<double, kTimeCategories> seconds{};
  double wall_seconds = 0.0;

  void record(Counter c, std::uint64_t amount = 1) noexcept {
    if (!enabled) return;
    switch (c) {
      case Counter::NodesVisited: nodes_visited += amount; break;
      case Counter::DonationsMade: donations_made += amount; break;
      case Counter::DonationsReceived: donations_received += amount; break;
      case Counter::RootsClaimed: roots_claimed += amount; break;
    }
  }

  void record(TimeCategory c, double secs) noexcept {
    if (!enabled || !timing) return;
    seconds[static_cast<std::size_t>(c)] += secs;
  }

  bool timing_on() const noexcept { return enabled && timing; }
};

/// Adds the elapsed time of its scope to one category when timing is on.
class ScopedTimer {
 public:
  ScopedTimer(WorkerMetrics& m, TimeCategory c) : m_(m), c_(c), on_(m.timing_on()) {
    if (on_) start_ = std::chrono::steady_clock::now();
  }
  ~ScopedTimer() {
    if (on_)
      m_.record(c_, std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count());
  }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  WorkerMetrics& m_;
  TimeCategory c_;
  bool on_;
  std::chrono::steady_clock::time_point start_;
};

struct MetricsReport {
  std::size_t workers = 0;
  std::uint64_t total_nodes = 0;
  std::uint64_t max_nodes = 0;
  double avg_nodes = 0.0;
  /// max / avg nodes visited per worker; 1.0 when nothing was visited.
  double load_ratio = 1.0;
  std::array<double, kTimeCategories> category_seconds{};
  /// Fraction of the summed category time spent in each category.
  std::array<double, kTimeCategories> category_share{};
  std::uint64_t donations_made = 0;
  std::uint64_t donations_received = 0;
  std::uint64_t roots_claimed = 0;
};

inline MetricsReport report(std::span<const WorkerMetrics> workers) {
  MetricsReport r;
  r.workers = workers.size();
  for (const auto& w : workers) {
    r.total_nodes += w.nodes_visited;
    r.max_nodes = std::max(r.max_nodes, w.nodes_visited);
    r.donations_made += w.donations_made;
    r.donations_received += w.donations_received;
    r.roots_claimed += w.roots_claimed;
    for (std::size_t c = 0; c < kTimeCategories; ++c) r.category_seconds[c] += w.seconds[c];
  }
  if (!workers.empty()) r.avg_nodes = static_cast<double>(r.total_nodes) / static_cast<double>(workers.size());
  if (r.avg_nodes > 0.0) r.load_ratio = static_cast<double>(r.max_nodes) / r.avg_nodes;
  double sum = 0.0;
  for (double s : r.category_seconds) sum += s;
  if (sum > 0.0)
    for (std::size_t c = 0; c < kTimeCategories; ++c) r.category_share[c] = r.category_seconds[c] / sum;
  return r;
}

}  // namespace pmce

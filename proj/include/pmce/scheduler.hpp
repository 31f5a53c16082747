#pragma once

// Two-phase parallel enumeration.
//
// Phase 1: workers claim independent roots from a shared counter and traverse
// them depth-first. Phase 2 starts, without any barrier, once the counter is
// exhausted: finished workers join the worker list and wait, while workers
// still traversing donate branches to them.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "pmce/bk_core.hpp"
#include "pmce/clique_sink.hpp"
#include "pmce/errors.hpp"
#include "pmce/graph.hpp"
#include "pmce/metrics.hpp"
#include "pmce/traversal.hpp"
#include "pmce/worker_list.hpp"

namespace pmce {

enum class InducedChoice { Partial, Full, Auto };

/// Partial subgraphs win when a full one would be much larger than a partial
/// one, i.e. when max_degree / degeneracy exceeds 200.
inline constexpr double kPartialRatioThreshold = 200.0;

inline InducedMode select_induced_mode(double max_degree_over_degeneracy) {
  return max_degree_over_degeneracy > kPartialRatioThreshold ? InducedMode::Partial
                                                             : InducedMode::Full;
}

inline InducedMode select_induced_mode(std::size_t max_degree, std::size_t degeneracy) {
  if (degeneracy == 0) return InducedMode::Full;
  return select_induced_mode(static_cast<double>(max_degree) / static_cast<double>(degeneracy));
}

inline std::size_t default_workers() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

struct RunConfig {
  std::size_t workers = default_workers();
  RootLevel roots = RootLevel::L1;
  InducedChoice induced = InducedChoice::Auto;
  bool worker_list = true;
  std::size_t donation_min_p = 10;
  Backoff backoff{};
  bool collect_metrics = true;
  bool time_breakdown = false;

  void validate() const {
    if (workers < 1) throw ContractViolation("workers must be >= 1");
    if (backoff.initial.count() <= 0 || backoff.max < backoff.initial)
      throw ContractViolation("backoff must satisfy 0 < initial <= max");
  }
};

struct RunResult {
  std::uint64_t clique_count = 0;
  std::vector<WorkerMetrics> workers;
  std::uint64_t donation_count = 0;
  InducedMode induced_mode = InducedMode::Full;
  RootLevel roots = RootLevel::L1;
  std::size_t total_roots = 0;
  double phase1_seconds = 0.0;     // start until the root counter ran out
  double traversal_seconds = 0.0;  // start until all workers joined

  MetricsReport metrics() const { return report(workers); }
};

/// Shared root counter. Every index in [0, total) goes to exactly one caller.
class RootCounter {
 public:
  explicit RootCounter(std::size_t total) : total_(total) {}

  std::optional<std::size_t> claim_next_root() noexcept {
    if (next_.load(std::memory_order_relaxed) >= total_) return std::nullopt;
    const std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
    if (i >= total_) return std::nullopt;
    return i;
  }

  /// True once every root has been handed out: phase 2 has begun.
  bool exhausted() const noexcept { return next_.load(std::memory_order_relaxed) >= total_; }
  std::size_t total() const noexcept { return total_; }

 private:
  std::size_t total_;
  std::atomic<std::size_t> next_{0};
};

/// Donation gate, evaluated when a donor is about to enter a new branch.
/// Conditions are checked cheapest first so small branches never touch the
/// worker list.
inline bool try_donate(const DonationOffer& offer, WorkerList& wl, const RunConfig& cfg,
                       const RootCounter& counter, WorkerMetrics& m) {
  if (offer.child_p_size() == 0 || offer.child_p_size() < cfg.donation_min_p) return false;
  if (!counter.exhausted()) return false;
  if (!offer.sibling_remaining() || !offer.shallower_remaining()) return false;
  ScopedTimer t(m, TimeCategory::WorkerListOps);
  auto receiver = wl.pop();
  if (!receiver) return false;
  wl.deliver(*receiver, offer.package());
  m.record(Counter::DonationsMade);
  return true;
}

/// Resolves Auto against the graph: max degree over degeneracy, where the
/// degeneracy of a reordered graph is its largest later-neighbor count.
inline InducedMode resolve_induced_mode(const Graph& g, InducedChoice choice) {
  if (choice == InducedChoice::Partial) return InducedMode::Partial;
  if (choice == InducedChoice::Full) return InducedMode::Full;
  std::size_t max_degree = 0;
  for (vertex_t v = 0; v < g.num_vertices(); ++v) max_degree = std::max(max_degree, g.degree(v));
  return select_induced_mode(max_degree, max_later_degree(g));
}

/// Counts (and optionally collects) every maximal clique of a
/// degeneracy-reordered graph. Second-level roots need g.build_edge_list().
inline RunResult run(const Graph& g, const RunConfig& cfg, CliqueSink& sink) {
  cfg.validate();
  if (cfg.roots == RootLevel::L2 && !g.has_edge_list())
    throw ContractViolation("second-level roots need the edge list; call build_edge_list()");

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  RunResult result;
  result.roots = cfg.roots;
  result.induced_mode = resolve_induced_mode(g, cfg.induced);
  const std::size_t degeneracy = max_later_degree(g);
  const RootSet roots(g, cfg.roots);
  result.total_roots = roots.size();

  RootCounter counter(roots.size());
  WorkerList wl(cfg.workers);
  std::atomic<bool> abort{false};
  std::atomic<bool> phase2_seen{false};
  std::atomic<std::int64_t> phase1_ns{0};
  std::vector<CliqueSink> sinks(cfg.workers, sink.empty_like());
  std::vector<std::exception_ptr> errors(cfg.workers);
  result.workers.resize(cfg.workers);
  for (auto& w : result.workers) {
    w.enabled = cfg.collect_metrics;
    w.timing = cfg.time_breakdown;
  }

  auto worker = [&](std::size_t id) {
    const auto t0 = clock::now();
    WorkerMetrics& m = result.workers[id];
    CliqueSink& local = sinks[id];
    try {
      SubtreeTraversal engine(g, degeneracy);
      auto hook = [&](const DonationOffer& offer) {
        return cfg.worker_list && try_donate(offer, wl, cfg, counter, m);
      };
      while (!abort.load(std::memory_order_relaxed)) {
        auto i = counter.claim_next_root();
        if (!i) break;
        m.record(Counter::RootsClaimed);
        engine.run_root(roots.task(*i), result.induced_mode, local, m, hook);
      }
      if (!phase2_seen.exchange(true))
        phase1_ns.store(std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count());
      while (cfg.worker_list) {
        bool all_idle;
        {
          ScopedTimer t(m, TimeCategory::WorkerListOps);
          all_idle = wl.enqueue_idle(id);
        }
        if (all_idle) {
          wl.terminate_all();
          break;
        }
        if (wl.wait(id, cfg.backoff) == Wake::Terminate) break;
        DonatedTask task = wl.take(id);
        m.record(Counter::DonationsReceived);
        if (!abort.load(std::memory_order_relaxed)) engine.run_donated(task, local, m, hook);
      }
    } catch (...) {
      errors[id] = std::current_exception();
      abort.store(true);
      // Stay in the idle protocol so the other workers can still terminate.
      if (cfg.worker_list && !wl.terminated()) {
        try {
          while (true) {
            if (wl.enqueue_idle(id)) {
              wl.terminate_all();
              break;
            }
            if (wl.wait(id, cfg.backoff) == Wake::Terminate) break;
            (void)wl.take(id);
            m.record(Counter::DonationsReceived);
          }
        } catch (...) {
        }
      }
    }
    m.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  };

  {
    std::vector<std::jthread> threads;
    threads.reserve(cfg.workers);
    for (std::size_t id = 0; id < cfg.workers; ++id) threads.emplace_back(worker, id);
  }

  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const auto& s : sinks) result.clique_count += s.total();
  for (auto& s : sinks) sink.merge(std::move(s));
  if (sink.mode() == CliqueSink::Mode::Collect) sink.canonicalize();
  for (const auto& w : result.workers) result.donation_count += w.donations_made;
  result.phase1_seconds = static_cast<double>(phase1_ns.load()) * 1e-9;
  result.traversal_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return result;
}

}  // namespace pmce

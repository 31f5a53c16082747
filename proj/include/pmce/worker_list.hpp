#pragma once

// Idle-worker list for branch donation.
//
// Idle workers put their id in a bounded multi-producer multi-consumer ring
// and sleep on a private flag. A donor pops an id, writes the branch into that
// worker's mailbox and then sets the flag with release ordering; the receiver
// reads the flag with acquire ordering, so the mailbox contents are visible
// to it. The ring holds at most one entry per worker and cannot overflow.
//
// Termination: `idle_` counts workers that have enqueued themselves and have
// not yet been handed work. A donor decrements it before waking its receiver,
// so the count only reaches the worker total when every worker is waiting and
// no donor is running.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstddef>
#include <memory>
#include <new>
#include <optional>
#include <thread>
#include <vector>

#include "pmce/errors.hpp"
#include "pmce/traversal.hpp"

namespace pmce {

struct Backoff {
  std::chrono::nanoseconds initial{1'000};
  std::chrono::nanoseconds max{1'000'000};
};

enum class Wake { Task, Terminate };

class WorkerList {
 public:
  explicit WorkerList(std::size_t workers)
      : workers_(workers), mask_(std::bit_ceil(std::max<std::size_t>(workers, 1)) - 1),
        cells_(mask_ + 1), slots_(workers) {
    detail::require(workers >= 1, "worker list needs at least one worker");
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i].seq.store(i, std::memory_order_relaxed);
  }

  std::size_t workers() const noexcept { return workers_; }

  /// Ring push. Returns false only if the ring is full, which cannot happen
  /// while each worker holds at most one entry.
  bool push(std::size_t id) {
    std::size_t pos = tail_.load(std::memory_order_relaxed);
    while (true) {
      Cell& c = cells_[pos & mask_];
      const std::size_t seq = c.seq.load(std::memory_order_acquire);
      const auto diff = static_cast<std::ptrdiff_t>(seq) - static_cast<std::ptrdiff_t>(pos);
      if (diff == 0) {
        if (tail_.compare_exchange_weak(pos, pos + 1, std::memory_order_relaxed)) {
          c.id = id;
          c.seq.store(pos + 1, std::memory_order_release);
          return true;
        }
      } else if (diff < 0) {
        // Either full, or a pop has claimed this cell and not yet released it.
        if (pos - head_.load(std::memory_order_acquire) >= cells_.size()) return false;
        std::this_thread::yield();
        pos = tail_.load(std::memory_order_relaxed);
      } else {
        pos = tail_.load(std::memory_order_relaxed);
      }
    }
  }

  /// Ring pop. Each pushed id is returned to at most one caller.
  std::optional<std::size_t> pop() {
    std::size_t pos = head_.load(std::memory_order_relaxed);
    while (true) {
      Cell& c = cells_[pos & mask_];
      const std::size_t seq = c.seq.load(std::memory_order_acquire);
      const auto diff = static_cast<std::ptrdiff_t>(seq) - static_cast<std::ptrdiff_t>(pos + 1);
      if (diff == 0) {
        if (head_.compare_exchange_weak(pos, pos + 1, std::memory_order_relaxed)) {
          const std::size_t id = c.id;
          c.seq.store(pos + mask_ + 1, std::memory_order_release);
          return id;
        }
      } else if (diff < 0) {
        return std::nullopt;
      } else {
        pos = head_.load(std::memory_order_relaxed);
      }
    }
  }

  /// Publishes `id` as a receiver. Returns true when this call made every
  /// worker idle; the caller must then call terminate_all().
  bool enqueue_idle(std::size_t id) {
    slots_[id].flag.store(kWaiting, std::memory_order_relaxed);
    if (!push(id)) throw ContractViolation("worker list overflow");
    return idle_.fetch_add(1, std::memory_order_acq_rel) + 1 ==
           static_cast<std::ptrdiff_t>(workers_);
  }

  /// Hands `task` to a receiver obtained from pop().
  void deliver(std::size_t id, DonatedTask task) {
    slots_[id].mailbox = std::move(task);
    idle_.fetch_sub(1, std::memory_order_acq_rel);
    slots_[id].flag.store(kTask, std::memory_order_release);
  }

  void terminate_all() {
    terminated_.store(true, std::memory_order_release);
    for (auto& s : slots_) s.flag.store(kTerminate, std::memory_order_release);
  }

  bool terminated() const noexcept { return terminated_.load(std::memory_order_acquire); }

  /// Sleeps until this worker is handed a task or the run terminates, with
  /// exponentially growing waits capped at `backoff.max`.
  Wake wait(std::size_t id, Backoff backoff) {
    auto delay = backoff.initial;
    while (true) {
      const int f = slots_[id].flag.load(std::memory_order_acquire);
      if (f == kTask) return Wake::Task;
      if (f == kTerminate) return Wake::Terminate;
      std::this_thread::sleep_for(delay);
      delay = std::min(delay * 2, backoff.max);
    }
  }

  /// Takes the mailbox after wait() returned Wake::Task.
  DonatedTask take(std::size_t id) {
    auto& s = slots_[id];
    detail::require(s.mailbox.has_value(), "woken without a mailbox");
    DonatedTask t = std::move(*s.mailbox);
    s.mailbox.reset();
    return t;
  }

  std::ptrdiff_t idle_count() const noexcept { return idle_.load(std::memory_order_acquire); }

 private:
  static constexpr int kWaiting = 0;
  static constexpr int kTask = 1;
  static constexpr int kTerminate = 2;

  struct Cell {
    std::atomic<std::size_t> seq{0};
    std::size_t id = 0;
  };
  struct alignas(64) Slot {
    std::atomic<int> flag{kWaiting};
    std::optional<DonatedTask> mailbox;
  };

  std::size_t workers_;
  std::size_t mask_;
  std::vector<Cell> cells_;
  std::vector<Slot> slots_;
  alignas(64) std::atomic<std::size_t> head_{0};
  alignas(64) std::atomic<std::size_t> tail_{0};
  alignas(64) std::atomic<std::ptrdiff_t> idle_{0};
  std::atomic<bool> terminated_{false};
};

}  // namespace pmce

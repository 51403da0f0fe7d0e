#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "shiftlab/budget.hpp"

namespace shiftlab::detail {

/// One deterministic work unit.  `nodes` is a deterministic function of the
/// unit alone (never of thread interleaving).  A unit either runs to
/// completion, stops early at a `hit`, or gives up at its node cap.
template <class Result>
struct UnitOutcome {
  bool completed = false;
  std::uint64_t nodes = 0;
  std::optional<Result> hit;
};

template <class Result>
struct FoldOutcome {
  /// Index of the first unit with a hit, if the budget reached it.
  std::optional<std::size_t> hit_unit;
  std::optional<Result> hit;
  /// Number of fully merged units (prefix length).
  std::size_t units_done = 0;
  BudgetUsage usage;
};

/// Runs `n_units` deterministic units against a shared node budget and folds
/// them in index order: units are charged sequentially; the first unit whose
/// charge does not fit marks the budget exhausted; the first affordable hit
/// wins and later units are ignored.  The fold result is identical for every
/// thread count.  `merge(i)` is called for completed pre-hit units in index
/// order so callers can aggregate.
template <class Result>
FoldOutcome<Result> run_units(
    std::size_t n_units, const BudgetConfig& budget,
    const std::function<UnitOutcome<Result>(std::size_t, std::uint64_t)>& run,
    const std::function<void(std::size_t)>& merge,
    std::atomic<std::size_t>* cancel_watermark = nullptr) {
  FoldOutcome<Result> fold;
  int threads = budget.threads < 1 ? 1 : budget.threads;

  if (threads == 1 || n_units <= 1) {
    std::uint64_t rem = budget.nodes;
    for (std::size_t i = 0; i < n_units; ++i) {
      UnitOutcome<Result> u = run(i, rem);
      fold.usage.nodes += u.nodes;
      if (u.hit && u.nodes <= rem) {
        fold.hit_unit = i;
        fold.hit = std::move(u.hit);
        return fold;
      }
      if (!u.completed || u.nodes > rem) {
        fold.usage.exhausted = true;
        return fold;
      }
      rem -= u.nodes;
      merge(i);
      ++fold.units_done;
    }
    return fold;
  }

  std::vector<UnitOutcome<Result>> slots(n_units);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> earliest_hit{n_units};
  std::atomic<std::size_t> local_watermark{n_units};
  std::atomic<std::size_t>* watermark =
      cancel_watermark ? cancel_watermark : &local_watermark;
  watermark->store(n_units);

  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n_units) return;
      if (i > earliest_hit.load()) continue;  // cannot affect the fold
      slots[i] = run(i, budget.nodes);
      if (slots[i].hit) {
        std::size_t cur = earliest_hit.load();
        while (i < cur && !earliest_hit.compare_exchange_weak(cur, i)) {
        }
        watermark->store(earliest_hit.load());
      }
    }
  };
  std::vector<std::thread> pool;
  int n_threads = std::min<std::size_t>(threads, n_units);
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::uint64_t rem = budget.nodes;
  for (std::size_t i = 0; i < n_units; ++i) {
    const UnitOutcome<Result>& u = slots[i];
    fold.usage.nodes += u.nodes;
    if (u.hit && u.nodes <= rem) {
      fold.hit_unit = i;
      fold.hit = u.hit;
      return fold;
    }
    if (!u.completed || u.nodes > rem) {
      fold.usage.exhausted = true;
      return fold;
    }
    rem -= u.nodes;
    merge(i);
    ++fold.units_done;
  }
  return fold;
}

}  // namespace shiftlab::detail

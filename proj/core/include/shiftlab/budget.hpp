#pragma once

#include <cstdint>

namespace shiftlab {

/// Search resource configuration.  `nodes` caps the number of DFS symbol
/// placements a single operation may spend; `threads` is the worker count.
/// Results are bit-identical for every thread count: work is split into a
/// fixed list of deterministic chunks and the budget is accounted in
/// canonical chunk order, independent of execution order.
struct BudgetConfig {
  std::uint64_t nodes = 10'000'000;
  int threads = 1;
};

struct BudgetUsage {
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

}  // namespace shiftlab

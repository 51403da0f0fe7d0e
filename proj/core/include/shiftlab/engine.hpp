#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "shiftlab/budget.hpp"
#include "shiftlab/subshift.hpp"

namespace shiftlab {

using BigInt = boost::multiprecision::cpp_int;

/// Result of a counting run.  When the budget ran out, `count` is the exact
/// count over the completed chunk prefix (a lower bound) and `complete` is
/// false.
struct CountOutcome {
  BigInt count = 0;
  bool complete = false;
  BudgetUsage usage;
};

struct EnumerateOutcome {
  std::vector<Pattern> patterns;  // canonical order, duplicate-free
  bool complete = false;
  BudgetUsage usage;
};

struct ExtendOutcome {
  std::optional<Pattern> witness;  // canonical-least admissible extension
  bool complete = false;           // false only on budget exhaustion
  BudgetUsage usage;
};

struct MemberOutcome {
  bool member = false;
  bool complete = false;
  BudgetUsage usage;
};

/// Admissible patterns of support F at the given level.
///
/// LocalMargin(r) enumerates locally admissible patterns on F.B_r and
/// projects to F; ExactZ counts via the trimmed forbidden-word automaton.
/// Enumeration assigns sites depth-first in canonical order (target sites
/// first) with incremental constraint checks, so identical inputs give
/// identical outputs at any thread count.
CountOutcome count_admissible(const Subshift& shift, const FiniteSubset& f,
                              const Level& level,
                              const BudgetConfig& budget = {});

EnumerateOutcome enumerate_admissible(const Subshift& shift,
                                      const FiniteSubset& f,
                                      const Level& level,
                                      const BudgetConfig& budget = {});

/// Least admissible-at-level pattern on `target` that restricts to `p`
/// (support(p) must lie inside target), or no witness.
ExtendOutcome extend_witness(const Subshift& shift, const Pattern& p,
                             const FiniteSubset& target, const Level& level,
                             const BudgetConfig& budget = {});

/// Whether p itself is admissible at the level on its own support,
/// i.e. p lies in L^{level}_{support(p)}.
MemberOutcome member_at_level(const Subshift& shift, const Pattern& p,
                              const Level& level,
                              const BudgetConfig& budget = {});

struct LocalGlobalRow {
  int r;
  BigInt count;
  bool complete;
};

struct LocalGlobalReport {
  std::vector<LocalGlobalRow> rows;
  /// Least r >= 1 with count(r) == count(r-1), if any.
  std::optional<int> stabilized_at;
  BudgetUsage usage;
};

/// |L^{loc,r}_F| for r = 0..r_max, with a stabilization flag.
LocalGlobalReport local_equals_global_check(const Subshift& shift,
                                            const FiniteSubset& f, int r_max,
                                            const BudgetConfig& budget = {});

namespace detail {

/// Internal: window DFS forced even where a linear fast path exists.
/// Used by tests to cross-check the GF(2) counting path.
CountOutcome count_admissible_dfs(const Subshift& shift, const FiniteSubset& f,
                                  int margin, const BudgetConfig& budget);

}  // namespace detail

}  // namespace shiftlab

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shiftlab/engine.hpp"

namespace shiftlab {

/// A splice check instance: A <= B <= W, all in one group.
struct SpliceProblem {
  FiniteSubset inner;   // A
  FiniteSubset outer;   // B
  FiniteSubset window;  // W
  Level level;
};

/// Memory-set verdicts are scale-relative: Holds means "no counterexample
/// among admissible-at-level patterns on this window"; only ExactZ
/// counterexamples refute TMP with this (A,B) outright.
struct TmpHolds {
  Level level;
  FiniteSubset window;
};

struct TmpCounterexample {
  Pattern x, y;      // admissible on W, equal on B\A
  Pattern spliced;   // x on A, y on W\A; not admissible at level
};

struct TmpInconclusive {};

struct Verdict {
  std::variant<TmpHolds, TmpCounterexample, TmpInconclusive> outcome;
  BudgetUsage usage;

  bool holds() const { return std::holds_alternative<TmpHolds>(outcome); }
  const TmpCounterexample* counterexample() const {
    return std::get_if<TmpCounterexample>(&outcome);
  }
  bool inconclusive() const {
    return std::holds_alternative<TmpInconclusive>(outcome);
  }
};

/// Exhaustively tests all admissible-at-level pairs (x, y) on W that agree
/// on B\A; Holds if every splice is admissible, else the least
/// counterexample in (x, y) order.  For linear rules the pair space is a
/// GF(2) subspace and the check runs by elimination; its counterexamples
/// take the difference form (x = least failing kernel vector, y = 0).
Verdict check_memory_set(const Subshift& shift, const FiniteSubset& a,
                         const FiniteSubset& b, const FiniteSubset& window,
                         const Level& level, const BudgetConfig& budget = {});

Verdict check_memory_set(const Subshift& shift, const SpliceProblem& problem,
                         const BudgetConfig& budget = {});

enum class MarginSide { a_times_f, f_times_a };

struct ScanRow {
  FiniteSubset a, b, window;
  Verdict verdict;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  bool all_hold() const;
};

/// check_memory_set(A, A.F, A.F.B_w) for each A (margin side selectable;
/// the strong-TMP margin convention defaults to A.F).
ScanReport strong_tmp_scan(const Subshift& shift, const FiniteSubset& f,
                           const std::vector<FiniteSubset>& supports,
                           int window_growth, const Level& level,
                           const BudgetConfig& budget = {},
                           MarginSide side = MarginSide::a_times_f);

/// Finite certificate of an asymptotic pair: two A-patterns sharing a
/// context on W\A, both glue-admissible at the level.
struct PairWitness {
  Pattern p, q;     // on A, p < q, p != q
  Pattern context;  // on W\A
  FiniteSubset a, window;
  Level level;
};

struct PairSearchOutcome {
  std::optional<PairWitness> witness;  // least under (p, q, context)
  bool complete = false;               // false only on budget exhaustion
  BudgetUsage usage;
};

PairSearchOutcome find_interchangeable_pair(const Subshift& shift,
                                            const FiniteSubset& a,
                                            const FiniteSubset& window,
                                            const Level& level,
                                            const BudgetConfig& budget = {});

struct HomoclinicOutcome {
  std::optional<Pattern> witness;  // least pattern on B_radius, != background
  int radius = 0;
  int margin = 0;
  bool complete = false;
  BudgetUsage usage;
};

/// Least pattern supported in B_radius, not identically `background`, whose
/// over-background extension is locally admissible on B_{radius+margin}.
/// For linear rules with background 0 this is a GF(2) kernel computation.
/// The margin defaults to the rule diameter.
HomoclinicOutcome homoclinic_search(const Subshift& shift, Symbol background,
                                    int radius,
                                    std::optional<int> margin = std::nullopt,
                                    const BudgetConfig& budget = {});

}  // namespace shiftlab

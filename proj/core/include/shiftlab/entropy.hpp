#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftlab/engine.hpp"

namespace shiftlab {

/// ln(count), robust for counts beyond double range.
double log_big(const BigInt& n);

struct EntropyWindowRow {
  std::string window_id;  // "box:4" or "ball:2"
  std::size_t window_size = 0;
  BigInt count;
  double rate = 0.0;  // ln(count) / window_size
  bool complete = false;
};

/// Pattern-count rates over a window sequence.  For Z^d the windows are the
/// Folner boxes [0,n)^d and the rates approximate topological entropy; for
/// free groups they are balls and the series is labeled plain window rates.
/// Under LocalMargin the rates upper-bound the entropy contribution of each
/// window.
struct EntropySeries {
  std::vector<EntropyWindowRow> rows;
  Level level;
  bool folner_windows = false;
  BudgetUsage usage;
};

EntropySeries entropy_series(const Subshift& shift,
                             const std::vector<int>& windows,
                             const Level& level,
                             const BudgetConfig& budget = {});

struct NaiveEntropyRow {
  std::size_t candidate = 0;
  std::size_t size = 0;
  BigInt count;
  double rate = 0.0;
  bool complete = false;
};

/// Minimum normalized log-count over the candidate sets: an upper bound for
/// the naive-entropy infimum, which ranges over all finite sets.
struct NaiveEntropyBound {
  double value = 0.0;
  std::size_t argmin = 0;
  std::vector<NaiveEntropyRow> rows;
  BudgetUsage usage;
};

NaiveEntropyBound naive_entropy_upper(const Subshift& shift,
                                      const std::vector<FiniteSubset>& candidates,
                                      const Level& level,
                                      const BudgetConfig& budget = {});

/// ln of the spectral radius of the m-block transition matrix of a Z SFT
/// (forbidden words of length <= m+1), after trimming non-essential states.
/// nullopt means the subshift is empty and its entropy undefined.
std::optional<double> transfer_matrix_entropy(const Subshift& shift,
                                              int memory);

struct IndependenceReport {
  std::vector<Pattern> cylinders;
  FiniteSubset f;
  FiniteSubset best_set;  // maximum independence set found inside F
  Level level;
  bool complete = false;  // false: best_set is a budget-limited lower bound
  BudgetUsage usage;

  double density() const {
    return f.empty() ? 0.0
                     : static_cast<double>(best_set.size()) /
                           static_cast<double>(f.size());
  }
};

/// Largest J <= F such that every choice function J -> cylinders is realized
/// by an admissible-at-level pattern; branch and bound in canonical order,
/// monotone pruning.  Cylinders share one support and must be distinct.
IndependenceReport independence_density(const Subshift& shift,
                                        const std::vector<Pattern>& cylinders,
                                        const FiniteSubset& f,
                                        const Level& level,
                                        const BudgetConfig& budget = {});

struct MicrostateCount {
  int n = 0;
  int beta = 0;
  BigInt count;
  bool complete = false;
  BudgetUsage usage;
};

/// Labelings of the n-cycle (a cyclic permutation model of Z) with at most
/// beta positions starting a forbidden word.  beta = 0 is the trace of the
/// n-th power of the transition matrix.
MicrostateCount cyclic_microstate_count(const Subshift& shift, int n, int beta,
                                        const BudgetConfig& budget = {});

}  // namespace shiftlab

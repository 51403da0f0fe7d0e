#pragma once

#include <optional>

#include "shiftlab/engine.hpp"

namespace shiftlab {

/// Forbidden-word automaton for a Z SFT: de Bruijn states over the last m
/// symbols, transitions blocked by forbidden words, then trimmed to the
/// states lying on bi-infinite paths.  Sound for exact (globally admissible)
/// pattern counts on Z.
class ZAutomaton {
 public:
  /// Builds with memory m = longest forbidden word - 1, or the given larger
  /// memory.  Forbidden patterns with gaps are expanded over the alphabet.
  /// Throws UsageError unless the shift is a Z SFT; ResourceError if the
  /// state count exceeds the cap.
  static ZAutomaton build(const Subshift& shift,
                          std::optional<int> memory = std::nullopt,
                          std::size_t state_cap = std::size_t(1) << 20);

  int memory() const { return m_; }
  std::size_t state_count() const { return n_states_; }
  std::size_t alive_count() const { return alive_count_; }
  bool empty_shift() const { return alive_count_ == 0; }

  /// Exact |L_F| for finite F in Z.
  CountOutcome count(const FiniteSubset& f, const BudgetConfig& budget) const;
  EnumerateOutcome enumerate(const FiniteSubset& f,
                             const BudgetConfig& budget) const;
  /// Whether p extends to a configuration of the subshift.
  MemberOutcome member(const Pattern& p, const BudgetConfig& budget) const;
  /// Least globally admissible extension of p to target.
  ExtendOutcome extend(const Pattern& p, const FiniteSubset& target,
                       const BudgetConfig& budget) const;

  /// ln of the spectral radius of the trimmed transition matrix, or nullopt
  /// for the empty subshift.  Power iteration with Collatz-Wielandt bounds
  /// per strongly connected component, relative tolerance 1e-12.
  std::optional<double> spectral_entropy() const;

  /// Number of n-cycle labelings with no forbidden word on any cyclic
  /// window: the trace of the n-th power of the transition matrix.
  BigInt cyclic_count(int n) const;

 private:
  ZAutomaton() = default;

  bool valid_transition(std::size_t state, Symbol c) const {
    return valid_[state * n_symbols_ + c] != 0;
  }
  std::size_t next_state(std::size_t state, Symbol c) const;
  std::vector<Symbol> state_word(std::size_t state) const;

  const Subshift* shift_ = nullptr;
  int m_ = 0;
  std::size_t n_symbols_ = 0;
  std::size_t n_states_ = 0;
  std::vector<std::uint8_t> valid_;  // [state * n_symbols + c]
  std::vector<std::uint8_t> alive_;  // on a bi-infinite path
  std::size_t alive_count_ = 0;
};

}  // namespace shiftlab

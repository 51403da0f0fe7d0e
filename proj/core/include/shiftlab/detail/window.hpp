#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "shiftlab/engine.hpp"

namespace shiftlab::detail {

inline constexpr Symbol kUnassigned = std::numeric_limits<Symbol>::max();

/// A subshift's constraints compiled over a fixed finite window E = T.B_r.
///
/// Assignment positions run over E with the projection target T first (in
/// canonical order), then the margin sites (canonical).  Every constraint
/// instance whose translated support lies inside E is indexed by the
/// position at which it becomes fully assigned.
struct CompiledWindow {
  const Subshift* shift = nullptr;
  FiniteSubset target;
  FiniteSubset sites;  // E, canonical order
  std::uint32_t n_target = 0;
  std::uint32_t n_total = 0;
  std::uint16_t n_symbols = 0;

  std::vector<std::uint32_t> site_of_pos;  // position -> index into sites
  std::vector<std::uint32_t> pos_of_site;  // index into sites -> position

  struct SymEntry {
    std::uint32_t pos;
    Symbol sym;
  };
  // Forbidden-pattern instances completing at each position.
  std::vector<std::vector<std::vector<SymEntry>>> forb_at;
  // GF(2) parity instances completing at each position.
  std::vector<std::vector<std::vector<std::uint32_t>>> par_at;

  bool pm = false;  // perfect-matching predicate
  std::vector<std::int32_t> pm_partner;  // [pos * n_symbols + sym] -> pos | -1
  std::vector<Symbol> pm_inv_sym;        // [sym] -> inverse symbol
  std::vector<std::vector<SymEntry>> pm_incoming;  // [pos] -> (src, sym)

  bool sunny = false;
  Symbol sunny_one = 0;

  std::size_t position_of(const Group& g, const GroupElement& site) const {
    return pos_of_site[*sites.index_of(g, site)];
  }
};

CompiledWindow compile_window(const Subshift& shift, const FiniteSubset& target,
                              int margin);

/// Compiles over an explicit site set E >= target.
CompiledWindow compile_window_over(const Subshift& shift,
                                   const FiniteSubset& target,
                                   const FiniteSubset& sites);

/// One partial assignment over a compiled window.
struct AssignState {
  std::vector<Symbol> val;
  std::uint32_t ones = 0;

  explicit AssignState(const CompiledWindow& w)
      : val(w.n_total, kUnassigned) {}
};

/// Places v at pos and checks every constraint that completes there.
/// Returns false (and rolls the assignment back) if a constraint fails.
bool assign_and_check(const CompiledWindow& w, AssignState& st,
                      std::uint32_t pos, Symbol v);
void unassign(const CompiledWindow& w, AssignState& st, std::uint32_t pos);

enum class WindowGoal {
  count,      // count distinct projections to the target
  enumerate,  // count and collect them, canonical order
  first,      // stop at the least full target assignment with a completion
};

struct WindowRun {
  WindowGoal goal = WindowGoal::count;
  /// Forced symbols by position (-1 = free); pins inside the target and out.
  std::vector<std::int32_t> pinned;
  /// For `first`: a target assignment to skip (background configuration).
  const std::vector<Symbol>* skip_target_values = nullptr;
};

struct WindowRunOutput {
  BigInt count = 0;
  std::vector<Pattern> patterns;
  std::optional<Pattern> witness;
  bool complete = false;
  BudgetUsage usage;
};

WindowRunOutput run_window(const CompiledWindow& w, const WindowRun& run,
                           const BudgetConfig& budget);

std::vector<std::int32_t> pins_from_pattern(const CompiledWindow& w,
                                            const Pattern& p);

}  // namespace shiftlab::detail

#include "shiftlab/tmp.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "shiftlab/detail/run_units.hpp"
#include "shiftlab/detail/window.hpp"
#include "shiftlab/gf2.hpp"

namespace shiftlab {

namespace {

using detail::AssignState;
using detail::CompiledWindow;

void require_chain(const Group& g, const FiniteSubset& a, const FiniteSubset& b,
                   const FiniteSubset& w) {
  if (a.empty()) throw UsageError("A must be nonempty");
  if (!a.subset_of(g, b) || !b.subset_of(g, w))
    throw UsageError("memory-set check needs A <= B <= W");
}

int level_margin(const Level& level) {
  if (const auto* lm = std::get_if<LocalMargin>(&level)) return lm->r;
  return 0;
}

// GF(2) matrix whose rows are all constraint instances inside the window.
BitMatrix instance_matrix(const CompiledWindow& w) {
  std::size_t rows = 0;
  for (const auto& at : w.par_at) rows += at.size();
  BitMatrix m(rows, w.n_total);
  std::size_t r = 0;
  for (const auto& at : w.par_at)
    for (const auto& inst : at) {
      for (std::uint32_t pos : inst) m.set(r, pos, !m.get(r, pos));
      ++r;
    }
  return m;
}

// Rows of `basis` restricted to the columns in `cols`.
BitMatrix restrict_columns(const BitMatrix& basis,
                           const std::vector<std::uint32_t>& cols) {
  BitMatrix out(basis.rows(), cols.size());
  for (std::size_t r = 0; r < basis.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      out.set(r, c, basis.get(r, cols[c]));
  return out;
}

// Basis of the subspace {v in rowspace(basis) : v[z] = 0 for z in zeros}.
BitMatrix subspace_with_zeros(const BitMatrix& basis,
                              const std::vector<std::uint32_t>& zeros) {
  // Solve in coefficient space: rows c with sum_i c_i basis[i][z] = 0.
  BitMatrix coeff_sys(zeros.size(), basis.rows());
  for (std::size_t zi = 0; zi < zeros.size(); ++zi)
    for (std::size_t i = 0; i < basis.rows(); ++i)
      coeff_sys.set(zi, i, basis.get(i, zeros[zi]));
  BitMatrix coeffs = coeff_sys.kernel_basis();
  BitMatrix out(coeffs.rows(), basis.cols());
  for (std::size_t r = 0; r < coeffs.rows(); ++r)
    for (std::size_t i = 0; i < basis.rows(); ++i)
      if (coeffs.get(r, i))
        for (std::size_t c = 0; c < basis.cols(); ++c)
          if (basis.get(i, c)) out.set(r, c, !out.get(r, c));
  return out;
}

Pattern pattern_from_bits(const FiniteSubset& support,
                          const std::vector<std::uint8_t>& bits) {
  std::vector<Symbol> values(bits.begin(), bits.end());
  return Pattern{support, std::move(values)};
}

// Linear-rule memory set check.  Admissible patterns on W form the GF(2)
// subspace V_W (projection of the window kernel); pairs agreeing on B\A
// correspond to differences u in V_W vanishing there, and the splice of the
// pair lies in V_W iff u restricted to A does.
Verdict linear_memory_set(const Subshift& shift, const FiniteSubset& a,
                          const FiniteSubset& b, const FiniteSubset& window,
                          const Level& level) {
  const Group& g = shift.group;
  CompiledWindow w =
      detail::compile_window(shift, window, level_margin(level));
  BitMatrix kernel = instance_matrix(w).kernel_basis();

  std::vector<std::uint32_t> w_cols(w.n_target);
  for (std::uint32_t i = 0; i < w.n_target; ++i) w_cols[i] = i;
  BitMatrix v_w = restrict_columns(kernel, w_cols);
  v_w.rref();

  std::vector<std::uint32_t> zeros;   // positions of B\A inside W
  std::vector<std::uint8_t> in_a(w.n_target, 0);
  for (std::uint32_t i = 0; i < w.n_target; ++i) {
    if (a.contains(g, window[i]))
      in_a[i] = 1;
    else if (b.contains(g, window[i]))
      zeros.push_back(i);
  }
  BitMatrix u_basis = subspace_with_zeros(v_w, zeros);
  u_basis.rref();

  Verdict verdict;
  verdict.usage.nodes = kernel.rows() + u_basis.rows();
  for (std::size_t r = 0; r < u_basis.rows(); ++r) {
    std::vector<std::uint8_t> u = u_basis.row_as_vector(r);
    if (std::all_of(u.begin(), u.end(), [](auto x) { return x == 0; })) continue;
    std::vector<std::uint8_t> spliced(u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i)
      if (in_a[i]) spliced[i] = u[i];
    if (!v_w.row_space_contains(spliced)) {
      TmpCounterexample ce;
      ce.x = pattern_from_bits(window, u);
      ce.y = Pattern{window, std::vector<Symbol>(w.n_target, 0)};
      ce.spliced = pattern_from_bits(window, spliced);
      // Self-check through the generic membership path.
      if (!member_at_level(shift, ce.x, level).member ||
          !member_at_level(shift, ce.y, level).member ||
          member_at_level(shift, ce.spliced, level).member)
        throw Error("internal: linear TMP counterexample failed revalidation");
      verdict.outcome = std::move(ce);
      return verdict;
    }
  }
  verdict.outcome = TmpHolds{level, window};
  return verdict;
}

Verdict enumerated_memory_set(const Subshift& shift, const FiniteSubset& a,
                              const FiniteSubset& b, const FiniteSubset& window,
                              const Level& level, const BudgetConfig& budget) {
  const Group& g = shift.group;
  EnumerateOutcome all = enumerate_admissible(shift, window, level, budget);
  Verdict verdict;
  verdict.usage = all.usage;
  if (!all.complete) {
    verdict.outcome = TmpInconclusive{};
    return verdict;
  }

  std::vector<std::size_t> key_pos, a_pos;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (a.contains(g, window[i]))
      a_pos.push_back(i);
    else if (b.contains(g, window[i]))
      key_pos.push_back(i);
  }
  auto key_of = [&](const Pattern& p) {
    std::vector<Symbol> k(key_pos.size());
    for (std::size_t i = 0; i < key_pos.size(); ++i) k[i] = p.values[key_pos[i]];
    return k;
  };
  std::map<std::vector<Symbol>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < all.patterns.size(); ++i)
    groups[key_of(all.patterns[i])].push_back(i);

  auto is_member = [&](const std::vector<Symbol>& values) {
    auto it = std::lower_bound(
        all.patterns.begin(), all.patterns.end(), values,
        [](const Pattern& p, const std::vector<Symbol>& v) {
          return p.values < v;
        });
    return it != all.patterns.end() && it->values == values;
  };

  std::uint64_t rem = budget.nodes > verdict.usage.nodes
                          ? budget.nodes - verdict.usage.nodes
                          : 0;
  for (std::size_t xi = 0; xi < all.patterns.size(); ++xi) {
    const Pattern& x = all.patterns[xi];
    for (std::size_t yi : groups[key_of(x)]) {
      if (yi == xi) continue;
      if (rem == 0) {
        verdict.usage.exhausted = true;
        verdict.outcome = TmpInconclusive{};
        return verdict;
      }
      --rem;
      ++verdict.usage.nodes;
      const Pattern& y = all.patterns[yi];
      std::vector<Symbol> spliced = y.values;
      for (std::size_t p : a_pos) spliced[p] = x.values[p];
      if (!is_member(spliced)) {
        TmpCounterexample ce{x, y, Pattern{window, spliced}};
        if (!member_at_level(shift, ce.x, level).member ||
            !member_at_level(shift, ce.y, level).member ||
            member_at_level(shift, ce.spliced, level).member ||
            !(restrict_to(g, ce.x, b.minus(g, a)) ==
              restrict_to(g, ce.y, b.minus(g, a))))
          throw Error("internal: TMP counterexample failed revalidation");
        verdict.outcome = std::move(ce);
        return verdict;
      }
    }
  }
  verdict.outcome = TmpHolds{level, window};
  return verdict;
}

}  // namespace

Verdict check_memory_set(const Subshift& shift, const FiniteSubset& a,
                         const FiniteSubset& b, const FiniteSubset& window,
                         const Level& level, const BudgetConfig& budget) {
  validate_level(shift, level);
  require_chain(shift.group, a, b, window);
  if (shift.is_linear_rule())
    return linear_memory_set(shift, a, b, window, level);
  return enumerated_memory_set(shift, a, b, window, level, budget);
}

Verdict check_memory_set(const Subshift& shift, const SpliceProblem& problem,
                         const BudgetConfig& budget) {
  return check_memory_set(shift, problem.inner, problem.outer, problem.window,
                          problem.level, budget);
}

bool ScanReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ScanRow& r) { return r.verdict.holds(); });
}

ScanReport strong_tmp_scan(const Subshift& shift, const FiniteSubset& f,
                           const std::vector<FiniteSubset>& supports,
                           int window_growth, const Level& level,
                           const BudgetConfig& budget, MarginSide side) {
  const Group& g = shift.group;
  if (!f.contains(g, g.identity()))
    throw UsageError("the strong-TMP margin F must contain the identity");
  if (window_growth < 0) throw UsageError("window growth must be >= 0");
  ScanReport report;
  FiniteSubset growth = g.ball(window_growth);
  for (const auto& a : supports) {
    FiniteSubset b = side == MarginSide::a_times_f ? a.product(g, f)
                                                   : f.product(g, a);
    FiniteSubset w = b.product(g, growth);
    ScanRow row{a, b, w, check_memory_set(shift, a, b, w, level, budget)};
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

// Pair search over a GF(2) solution space: a witness exists iff some kernel
// vector of the window vanishes on W\A but not on A.
PairSearchOutcome linear_pair_search(const Subshift& shift,
                                     const FiniteSubset& a,
                                     const FiniteSubset& window,
                                     const Level& level) {
  const Group& g = shift.group;
  CompiledWindow w =
      detail::compile_window(shift, window, level_margin(level));
  BitMatrix kernel = instance_matrix(w).kernel_basis();

  std::vector<std::uint32_t> zeros, a_cols;
  for (std::uint32_t i = 0; i < w.n_target; ++i) {
    if (a.contains(g, window[i]))
      a_cols.push_back(i);
    else
      zeros.push_back(i);
  }
  BitMatrix vanishing = subspace_with_zeros(kernel, zeros);
  BitMatrix on_a = restrict_columns(vanishing, a_cols);

  PairSearchOutcome out;
  out.complete = true;
  out.usage.nodes = kernel.rows() + vanishing.rows();
  auto least = on_a.min_nonzero_row_vector();
  if (!least) return out;

  FiniteSubset context_sites = window.minus(g, a);
  PairWitness witness;
  witness.p = Pattern{a, std::vector<Symbol>(a.size(), 0)};
  witness.q = pattern_from_bits(a, *least);
  witness.context =
      Pattern{context_sites, std::vector<Symbol>(context_sites.size(), 0)};
  witness.a = a;
  witness.window = window;
  witness.level = level;
  out.witness = std::move(witness);
  return out;
}

// Depth-first search for a context shared by two fixed A-patterns: both
// copies are constrained simultaneously over the window sites outside A.
struct SharedContextDfs {
  const CompiledWindow& w;
  AssignState x, y;
  std::uint64_t nodes = 0;
  std::uint64_t cap = 0;
  const std::atomic<std::size_t>* watermark = nullptr;
  std::size_t unit_index = 0;
  bool aborted = false;

  explicit SharedContextDfs(const CompiledWindow& w_in)
      : w(w_in), x(w_in), y(w_in) {}

  bool charge() {
    if (++nodes > cap) {
      aborted = true;
      return false;
    }
    if ((nodes & 0xFFF) == 0 && watermark &&
        unit_index > watermark->load(std::memory_order_acquire))
      aborted = true;
    return !aborted;
  }

  bool assign_both(std::uint32_t pos, Symbol v) {
    if (!detail::assign_and_check(w, x, pos, v)) return false;
    if (!detail::assign_and_check(w, y, pos, v)) {
      detail::unassign(w, x, pos);
      return false;
    }
    return true;
  }

  bool search(std::uint32_t pos) {
    if (pos == w.n_total) return true;
    for (Symbol v = 0; v < w.n_symbols; ++v) {
      if (!charge()) return false;
      if (!assign_both(pos, v)) continue;
      if (search(pos + 1)) return true;
      detail::unassign(w, x, pos);
      detail::unassign(w, y, pos);
      if (aborted) return false;
    }
    return false;
  }
};

PairSearchOutcome enumerated_pair_search(const Subshift& shift,
                                         const FiniteSubset& a,
                                         const FiniteSubset& window,
                                         const Level& level,
                                         const BudgetConfig& budget) {
  const Group& g = shift.group;
  PairSearchOutcome out;

  // Candidate A-patterns: anything violating a constraint inside A can
  // never glue, so the locally admissible patterns on A are a complete
  // candidate list.
  EnumerateOutcome cand =
      enumerate_admissible(shift, a, LocalMargin{0}, budget);
  out.usage = cand.usage;
  if (!cand.complete) return out;
  std::size_t n_cand = cand.patterns.size();
  if (n_cand < 2) {
    out.complete = true;
    return out;
  }

  int margin = level_margin(level);
  FiniteSubset sites =
      margin == 0 ? window : window.product(g, g.ball(margin));
  CompiledWindow w = detail::compile_window_over(shift, a, sites);

  FiniteSubset context_sites = window.minus(g, a);
  std::vector<std::uint32_t> context_pos;
  for (const auto& site : context_sites)
    context_pos.push_back(
        static_cast<std::uint32_t>(w.position_of(g, site)));

  // Units are the ordered pairs (i, j), i < j, in lexicographic order;
  // the first pair with a shared context carries the least witness.
  std::size_t n_units = n_cand * (n_cand - 1) / 2;
  auto pair_of = [n_cand](std::size_t unit) {
    std::size_t i = 0, row = n_cand - 1;
    while (unit >= row) {
      unit -= row;
      ++i;
      --row;
    }
    return std::pair<std::size_t, std::size_t>(i, i + 1 + unit);
  };

  BudgetConfig rem = budget;
  rem.nodes = budget.nodes > out.usage.nodes ? budget.nodes - out.usage.nodes : 0;
  std::atomic<std::size_t> watermark{n_units};

  auto run_unit = [&](std::size_t unit,
                      std::uint64_t cap) -> detail::UnitOutcome<Pattern> {
    auto [i, j] = pair_of(unit);
    SharedContextDfs dfs(w);
    dfs.cap = cap;
    dfs.watermark = &watermark;
    dfs.unit_index = unit;
    detail::UnitOutcome<Pattern> u;
    bool seeded = true;
    for (std::uint32_t pos = 0; pos < w.n_target && seeded; ++pos) {
      if (!dfs.charge()) {
        seeded = false;
        break;
      }
      if (!detail::assign_and_check(w, dfs.x, pos,
                                    cand.patterns[i].values[pos])) {
        seeded = false;
      } else if (!detail::assign_and_check(w, dfs.y, pos,
                                           cand.patterns[j].values[pos])) {
        detail::unassign(w, dfs.x, pos);
        seeded = false;
      }
    }
    if (seeded && !dfs.aborted && dfs.search(w.n_target)) {
      std::vector<Symbol> ctx(context_pos.size());
      for (std::size_t c = 0; c < context_pos.size(); ++c)
        ctx[c] = dfs.x.val[context_pos[c]];
      u.hit = Pattern{context_sites, std::move(ctx)};
    }
    u.completed = !dfs.aborted;
    u.nodes = dfs.nodes;
    return u;
  };
  auto merge = [](std::size_t) {};

  auto fold =
      detail::run_units<Pattern>(n_units, rem, run_unit, merge, &watermark);
  out.usage.nodes += fold.usage.nodes;
  out.usage.exhausted = fold.usage.exhausted;
  out.complete = !fold.usage.exhausted;
  if (fold.hit) {
    auto [i, j] = pair_of(*fold.hit_unit);
    PairWitness witness;
    witness.p = cand.patterns[i];
    witness.q = cand.patterns[j];
    witness.context = *fold.hit;
    witness.a = a;
    witness.window = window;
    witness.level = level;
    out.witness = std::move(witness);
  }
  return out;
}

}  // namespace

PairSearchOutcome find_interchangeable_pair(const Subshift& shift,
                                            const FiniteSubset& a,
                                            const FiniteSubset& window,
                                            const Level& level,
                                            const BudgetConfig& budget) {
  validate_level(shift, level);
  const Group& g = shift.group;
  if (a.empty()) throw UsageError("A must be nonempty");
  if (!a.subset_of(g, window))
    throw UsageError("pair search needs A <= W");

  PairSearchOutcome out;
  if (shift.is_linear_rule() && !std::holds_alternative<ExactZ>(level))
    out = linear_pair_search(shift, a, window, level);
  else
    out = enumerated_pair_search(shift, a, window, level, budget);

  if (out.witness) {
    const PairWitness& pw = *out.witness;
    Pattern gx = glue(g, pw.p, pw.context);
    Pattern gy = glue(g, pw.q, pw.context);
    if (pw.p == pw.q || !member_at_level(shift, gx, level).member ||
        !member_at_level(shift, gy, level).member)
      throw Error("internal: pair witness failed revalidation");
  }
  return out;
}

HomoclinicOutcome homoclinic_search(const Subshift& shift, Symbol background,
                                    int radius, std::optional<int> margin,
                                    const BudgetConfig& budget) {
  const Group& g = shift.group;
  if (background >= shift.alphabet.size())
    throw UsageError("background symbol out of range");
  if (radius < 0) throw UsageError("radius must be >= 0");
  int m = margin.value_or(shift.rule_diameter());
  if (m < 0) throw UsageError("margin must be >= 0");

  HomoclinicOutcome out;
  out.radius = radius;
  out.margin = m;

  FiniteSubset b_n = g.ball(radius);
  FiniteSubset b_nm = g.ball(radius + m);
  Pattern all_bg{b_nm, std::vector<Symbol>(b_nm.size(), background)};
  if (!is_locally_admissible(shift, all_bg))
    throw UsageError("the all-background configuration is not admissible");

  CompiledWindow w = detail::compile_window_over(shift, b_n, b_nm);

  if (shift.is_linear_rule() && shift.alphabet.name(background) == "0") {
    // Kernel of the constraint system in the variables of B_n, everything
    // outside held at 0.
    BitMatrix full = instance_matrix(w);
    BitMatrix vars(full.rows(), w.n_target);
    for (std::size_t r = 0; r < full.rows(); ++r)
      for (std::uint32_t c = 0; c < w.n_target; ++c)
        vars.set(r, c, full.get(r, c));
    BitMatrix kernel = vars.kernel_basis();
    out.usage.nodes = full.rows() + kernel.rows();
    out.complete = true;
    auto least = kernel.min_nonzero_row_vector();
    if (least) out.witness = pattern_from_bits(b_n, *least);
  } else {
    detail::WindowRun run;
    run.goal = detail::WindowGoal::first;
    run.pinned.assign(w.n_total, -1);
    for (std::uint32_t pos = w.n_target; pos < w.n_total; ++pos)
      run.pinned[pos] = background;
    std::vector<Symbol> skip(w.n_target, background);
    run.skip_target_values = &skip;
    auto r = detail::run_window(w, run, budget);
    out.usage = r.usage;
    out.complete = r.complete;
    out.witness = std::move(r.witness);
  }

  if (out.witness) {
    FiniteSubset ring = b_nm.minus(g, b_n);
    Pattern over_bg =
        glue(g, *out.witness,
             Pattern{ring, std::vector<Symbol>(ring.size(), background)});
    bool all_bg_witness =
        std::all_of(out.witness->values.begin(), out.witness->values.end(),
                    [&](Symbol s) { return s == background; });
    if (all_bg_witness || !is_locally_admissible(shift, over_bg))
      throw Error("internal: homoclinic witness failed revalidation");
  }
  return out;
}

}  // namespace shiftlab

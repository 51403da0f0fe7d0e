#include "shiftlab/engine.hpp"

#include <algorithm>
#include <atomic>

#include "shiftlab/automaton.hpp"
#include "shiftlab/detail/run_units.hpp"
#include "shiftlab/detail/window.hpp"
#include "shiftlab/gf2.hpp"

namespace shiftlab {

namespace detail {

CompiledWindow compile_window(const Subshift& shift, const FiniteSubset& target,
                              int margin) {
  const Group& g = shift.group;
  return compile_window_over(
      shift, target,
      margin == 0 ? target : target.product(g, g.ball(margin)));
}

CompiledWindow compile_window_over(const Subshift& shift,
                                   const FiniteSubset& target,
                                   const FiniteSubset& sites) {
  const Group& g = shift.group;
  if (!target.subset_of(g, sites))
    throw UsageError("window sites must contain the target");
  CompiledWindow w;
  w.shift = &shift;
  w.target = target;
  w.sites = sites;
  w.n_target = static_cast<std::uint32_t>(target.size());
  w.n_total = static_cast<std::uint32_t>(w.sites.size());
  w.n_symbols = static_cast<std::uint16_t>(shift.alphabet.size());

  w.site_of_pos.resize(w.n_total);
  w.pos_of_site.assign(w.n_total, 0);
  std::vector<bool> is_target(w.n_total, false);
  for (std::uint32_t i = 0; i < w.n_target; ++i) {
    std::uint32_t idx = static_cast<std::uint32_t>(*w.sites.index_of(g, target[i]));
    w.site_of_pos[i] = idx;
    is_target[idx] = true;
  }
  std::uint32_t next = w.n_target;
  for (std::uint32_t idx = 0; idx < w.n_total; ++idx)
    if (!is_target[idx]) w.site_of_pos[next++] = idx;
  for (std::uint32_t pos = 0; pos < w.n_total; ++pos)
    w.pos_of_site[w.site_of_pos[pos]] = pos;

  w.forb_at.resize(w.n_total);
  w.par_at.resize(w.n_total);

  auto positions_of_translate = [&](const FiniteSubset& support,
                                    const GroupElement& g0)
      -> std::optional<std::vector<std::uint32_t>> {
    std::vector<std::uint32_t> out;
    out.reserve(support.size());
    for (const auto& h : support) {
      auto idx = w.sites.index_of(g, g.mul(g0, h));
      if (!idx) return std::nullopt;
      out.push_back(w.pos_of_site[*idx]);
    }
    return out;
  };

  if (const auto* fp = std::get_if<ForbiddenPatternsRule>(&shift.rule)) {
    for (const auto& q : fp->patterns) {
      GroupElement h0_inv = g.inv(q.support[0]);
      for (const auto& anchor : w.sites) {
        GroupElement g0 = g.mul(anchor, h0_inv);
        auto pos = positions_of_translate(q.support, g0);
        if (!pos) continue;
        std::vector<CompiledWindow::SymEntry> inst(pos->size());
        for (std::size_t i = 0; i < pos->size(); ++i)
          inst[i] = {(*pos)[i], q.values[i]};
        std::sort(inst.begin(), inst.end(),
                  [](const auto& a, const auto& b) { return a.pos < b.pos; });
        std::uint32_t last = inst.back().pos;
        w.forb_at[last].push_back(std::move(inst));
      }
    }
  } else if (const auto* lin = std::get_if<LinearGf2Rule>(&shift.rule)) {
    for (const auto& s : lin->supports) {
      GroupElement h0_inv = g.inv(s[0]);
      for (const auto& anchor : w.sites) {
        GroupElement g0 = g.mul(anchor, h0_inv);
        auto pos = positions_of_translate(s, g0);
        if (!pos) continue;
        std::sort(pos->begin(), pos->end());
        std::uint32_t last = pos->back();
        w.par_at[last].push_back(std::move(*pos));
      }
    }
  } else {
    BuiltinPredicate which = std::get<PredicateRule>(shift.rule).which;
    if (which == BuiltinPredicate::sunny_side_up) {
      w.sunny = true;
      w.sunny_one = *shift.alphabet.index_of("1");
    } else {
      w.pm = true;
      w.pm_partner.assign(std::size_t(w.n_total) * w.n_symbols, -1);
      w.pm_inv_sym.resize(w.n_symbols);
      w.pm_incoming.resize(w.n_total);
      std::vector<GroupElement> step(w.n_symbols);
      for (Symbol v = 0; v < w.n_symbols; ++v) {
        step[v] = g.parse_element(shift.alphabet.name(v));
        GroupElement inv = g.inv(step[v]);
        for (Symbol u = 0; u < w.n_symbols; ++u)
          if (g.parse_element(shift.alphabet.name(u)) == inv) w.pm_inv_sym[v] = u;
      }
      for (std::uint32_t pos = 0; pos < w.n_total; ++pos) {
        const GroupElement& site = w.sites[w.site_of_pos[pos]];
        for (Symbol v = 0; v < w.n_symbols; ++v) {
          auto idx = w.sites.index_of(g, g.mul(site, step[v]));
          if (!idx) continue;
          std::uint32_t partner = w.pos_of_site[*idx];
          w.pm_partner[std::size_t(pos) * w.n_symbols + v] =
              static_cast<std::int32_t>(partner);
          w.pm_incoming[partner].push_back({pos, v});
        }
      }
    }
  }
  return w;
}

bool assign_and_check(const CompiledWindow& w, AssignState& st,
                      std::uint32_t pos, Symbol v) {
  if (w.sunny && v == w.sunny_one && st.ones >= 1) return false;
  st.val[pos] = v;
  for (const auto& inst : w.forb_at[pos]) {
    bool match = true;
    for (const auto& e : inst) {
      if (st.val[e.pos] != e.sym) {
        match = false;
        break;
      }
    }
    if (match) {
      st.val[pos] = kUnassigned;
      return false;
    }
  }
  for (const auto& inst : w.par_at[pos]) {
    unsigned parity = 0;
    for (std::uint32_t p : inst) parity ^= st.val[p];
    if (parity & 1u) {
      st.val[pos] = kUnassigned;
      return false;
    }
  }
  if (w.pm) {
    std::int32_t partner = w.pm_partner[std::size_t(pos) * w.n_symbols + v];
    if (partner >= 0 && st.val[partner] != kUnassigned &&
        st.val[partner] != w.pm_inv_sym[v]) {
      st.val[pos] = kUnassigned;
      return false;
    }
    for (const auto& e : w.pm_incoming[pos]) {
      if (st.val[e.pos] == e.sym && v != w.pm_inv_sym[e.sym]) {
        st.val[pos] = kUnassigned;
        return false;
      }
    }
  }
  if (w.sunny && v == w.sunny_one) ++st.ones;
  return true;
}

void unassign(const CompiledWindow& w, AssignState& st, std::uint32_t pos) {
  if (w.sunny && st.val[pos] == w.sunny_one) --st.ones;
  st.val[pos] = kUnassigned;
}

std::vector<std::int32_t> pins_from_pattern(const CompiledWindow& w,
                                            const Pattern& p) {
  std::vector<std::int32_t> pins(w.n_total, -1);
  const Group& g = w.shift->group;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto idx = w.sites.index_of(g, p.support[i]);
    if (!idx) throw UsageError("pinned site lies outside the window");
    pins[w.pos_of_site[*idx]] = p.values[i];
  }
  return pins;
}

namespace {

struct Dfs {
  const CompiledWindow& w;
  const WindowRun& run;
  AssignState st;
  std::uint64_t nodes = 0;
  std::uint64_t cap = 0;
  const std::atomic<std::size_t>* watermark = nullptr;
  std::size_t unit_index = 0;
  bool aborted = false;

  BigInt count = 0;
  std::vector<Pattern>* collect = nullptr;
  std::optional<Pattern> witness;

  Dfs(const CompiledWindow& w_in, const WindowRun& run_in)
      : w(w_in), run(run_in), st(w_in) {}

  bool charge_node() {
    if (++nodes > cap) {
      aborted = true;
      return false;
    }
    if ((nodes & 0xFFF) == 0 && watermark &&
        unit_index > watermark->load(std::memory_order_acquire))
      aborted = true;
    return !aborted;
  }

  Symbol first_symbol(std::uint32_t pos) const {
    return run.pinned.empty() || run.pinned[pos] < 0
               ? 0
               : static_cast<Symbol>(run.pinned[pos]);
  }
  Symbol end_symbol(std::uint32_t pos) const {
    return run.pinned.empty() || run.pinned[pos] < 0
               ? w.n_symbols
               : static_cast<Symbol>(run.pinned[pos] + 1);
  }

  bool margin_exists(std::uint32_t pos) {
    if (pos == w.n_total) return true;
    for (Symbol v = first_symbol(pos); v < end_symbol(pos); ++v) {
      if (!charge_node()) return false;
      if (!assign_and_check(w, st, pos, v)) continue;
      bool found = margin_exists(pos + 1);
      unassign(w, st, pos);
      if (found) return true;
      if (aborted) return false;
    }
    return false;
  }

  // Returns true to stop the whole unit (hit or abort).
  bool target_dfs(std::uint32_t pos) {
    if (pos == w.n_target) {
      if (run.skip_target_values &&
          std::equal(run.skip_target_values->begin(),
                     run.skip_target_values->end(), st.val.begin()))
        return false;
      if (margin_exists(w.n_target)) {
        ++count;
        if (collect || run.goal == WindowGoal::first) {
          Pattern proj{w.target,
                       std::vector<Symbol>(st.val.begin(),
                                           st.val.begin() + w.n_target)};
          if (collect) collect->push_back(proj);
          if (run.goal == WindowGoal::first) {
            witness = std::move(proj);
            return true;
          }
        }
      }
      return aborted;
    }
    for (Symbol v = first_symbol(pos); v < end_symbol(pos); ++v) {
      if (!charge_node()) return true;
      if (!assign_and_check(w, st, pos, v)) continue;
      bool stop = target_dfs(pos + 1);
      unassign(w, st, pos);
      if (stop) return true;
    }
    return aborted;
  }
};

struct ChunkPlan {
  std::vector<std::vector<Symbol>> prefixes;
  std::uint32_t len = 0;
  std::uint64_t nodes = 0;
};

constexpr std::size_t kTargetChunks = 64;

// Expands assignment prefixes breadth-first until there are enough chunks.
// Runs sequentially and counts one node per attempted extension, so the
// accounting is independent of the thread count.
ChunkPlan plan_chunks(const CompiledWindow& w, const WindowRun& run) {
  ChunkPlan plan;
  plan.prefixes.push_back({});
  AssignState st(w);
  auto first_symbol = [&](std::uint32_t pos) -> Symbol {
    return run.pinned.empty() || run.pinned[pos] < 0
               ? 0
               : static_cast<Symbol>(run.pinned[pos]);
  };
  auto end_symbol = [&](std::uint32_t pos) -> Symbol {
    return run.pinned.empty() || run.pinned[pos] < 0
               ? w.n_symbols
               : static_cast<Symbol>(run.pinned[pos] + 1);
  };
  while (plan.len < w.n_target && plan.prefixes.size() < kTargetChunks &&
         !plan.prefixes.empty()) {
    std::vector<std::vector<Symbol>> next;
    for (const auto& prefix : plan.prefixes) {
      for (std::uint32_t i = 0; i < plan.len; ++i) {
        bool ok = assign_and_check(w, st, i, prefix[i]);
        (void)ok;  // prefixes were validated when created
      }
      for (Symbol v = first_symbol(plan.len); v < end_symbol(plan.len); ++v) {
        ++plan.nodes;
        if (assign_and_check(w, st, plan.len, v)) {
          auto ext = prefix;
          ext.push_back(v);
          next.push_back(std::move(ext));
          unassign(w, st, plan.len);
        }
      }
      for (std::uint32_t i = plan.len; i-- > 0;) unassign(w, st, i);
    }
    plan.prefixes = std::move(next);
    ++plan.len;
  }
  return plan;
}

}  // namespace

WindowRunOutput run_window(const CompiledWindow& w, const WindowRun& run,
                           const BudgetConfig& budget) {
  WindowRunOutput out;
  ChunkPlan plan = plan_chunks(w, run);
  out.usage.nodes = plan.nodes;
  if (plan.nodes > budget.nodes) {
    out.usage.exhausted = true;
    return out;
  }
  if (plan.prefixes.empty()) {
    out.complete = true;
    return out;
  }

  BudgetConfig chunk_budget = budget;
  chunk_budget.nodes -= plan.nodes;

  std::size_t n = plan.prefixes.size();
  std::vector<BigInt> counts(n);
  std::vector<std::vector<Pattern>> items(n);
  std::atomic<std::size_t> watermark{n};

  auto run_unit = [&](std::size_t i,
                      std::uint64_t cap) -> UnitOutcome<Pattern> {
    Dfs dfs(w, run);
    dfs.cap = cap;
    dfs.watermark = &watermark;
    dfs.unit_index = i;
    if (run.goal == WindowGoal::enumerate) dfs.collect = &items[i];
    const auto& prefix = plan.prefixes[i];
    for (std::uint32_t p = 0; p < plan.len; ++p) {
      bool ok = assign_and_check(w, dfs.st, p, prefix[p]);
      (void)ok;
    }
    dfs.target_dfs(plan.len);
    counts[i] = dfs.count;
    UnitOutcome<Pattern> u;
    u.completed = !dfs.aborted;
    u.nodes = dfs.nodes;
    if (dfs.witness) u.hit = std::move(dfs.witness);
    return u;
  };
  auto merge = [&](std::size_t i) {
    out.count += counts[i];
    if (run.goal == WindowGoal::enumerate)
      out.patterns.insert(out.patterns.end(),
                          std::make_move_iterator(items[i].begin()),
                          std::make_move_iterator(items[i].end()));
  };

  auto fold = run_units<Pattern>(n, chunk_budget, run_unit, merge, &watermark);
  out.usage.nodes += fold.usage.nodes;
  out.usage.exhausted = fold.usage.exhausted;
  out.witness = fold.hit;
  out.complete = !fold.usage.exhausted;
  return out;
}

CountOutcome count_admissible_dfs(const Subshift& shift, const FiniteSubset& f,
                                  int margin, const BudgetConfig& budget) {
  CompiledWindow w = compile_window(shift, f, margin);
  WindowRun run;
  run.goal = WindowGoal::count;
  WindowRunOutput r = run_window(w, run, budget);
  return CountOutcome{std::move(r.count), r.complete, r.usage};
}

}  // namespace detail

namespace {

using detail::CompiledWindow;

// Matrix of all GF(2) constraint instances over the window, one column per
// assignment position.
BitMatrix linear_instance_matrix(const CompiledWindow& w) {
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

CountOutcome linear_count(const Subshift& shift, const FiniteSubset& f,
                          int margin) {
  CompiledWindow w = detail::compile_window(shift, f, margin);
  BitMatrix constraints = linear_instance_matrix(w);
  BitMatrix kernel = constraints.kernel_basis();
  // Dimension of the projection of the solution space to the target
  // positions (the first n_target columns).
  BitMatrix proj(kernel.rows(), w.n_target);
  for (std::size_t r = 0; r < kernel.rows(); ++r)
    for (std::uint32_t c = 0; c < w.n_target; ++c)
      proj.set(r, c, kernel.get(r, c));
  std::size_t dim = proj.rank();
  CountOutcome out;
  out.count = BigInt(1) << dim;
  out.complete = true;
  out.usage.nodes = constraints.rows() + w.n_total;
  return out;
}

// Adds the pin equations of a pattern to the instance system.
Gf2System linear_system_with_pins(const CompiledWindow& w, const Pattern& p) {
  Gf2System sys;
  sys.a = linear_instance_matrix(w);
  sys.b.assign(sys.a.rows(), 0);
  const Group& g = w.shift->group;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto idx = w.sites.index_of(g, p.support[i]);
    if (!idx) throw UsageError("pattern site lies outside the window");
    sys.add_equation({w.pos_of_site[*idx]}, p.values[i] != 0);
  }
  return sys;
}

MemberOutcome linear_member(const Subshift& shift, const Pattern& p,
                            int margin) {
  CompiledWindow w = detail::compile_window(shift, p.support, margin);
  Gf2System sys = linear_system_with_pins(w, p);
  MemberOutcome out;
  out.member = sys.consistent();
  out.complete = true;
  out.usage.nodes = sys.a.rows() + w.n_total;
  return out;
}

ExtendOutcome linear_extend(const Subshift& shift, const Pattern& p,
                            const FiniteSubset& target, int margin) {
  CompiledWindow w = detail::compile_window(shift, target, margin);
  Gf2System sys = linear_system_with_pins(w, p);
  ExtendOutcome out;
  out.complete = true;
  out.usage.nodes = sys.a.rows() + w.n_total;
  if (!sys.consistent()) return out;
  // Greedy lexicographic extension over the unpinned target positions;
  // positions coincide with the canonical order of the target.
  const Group& g = shift.group;
  std::vector<Symbol> values(w.n_target, 0);
  for (std::uint32_t pos = 0; pos < w.n_target; ++pos) {
    auto pinned = p.support.index_of(g, w.target[pos]);
    if (pinned) {
      values[pos] = p.values[*pinned];
      continue;  // already an equation
    }
    sys.add_equation({pos}, false);
    if (sys.consistent()) {
      values[pos] = 0;
      continue;
    }
    sys.b.back() = 1;
    values[pos] = 1;
  }
  out.witness = Pattern{w.target, std::move(values)};
  return out;
}

int margin_of(const Level& level) { return std::get<LocalMargin>(level).r; }

}  // namespace

CountOutcome count_admissible(const Subshift& shift, const FiniteSubset& f,
                              const Level& level, const BudgetConfig& budget) {
  validate_level(shift, level);
  if (f.empty()) throw UsageError("count_admissible needs a nonempty support");
  if (std::holds_alternative<ExactZ>(level))
    return ZAutomaton::build(shift).count(f, budget);
  if (shift.is_linear_rule()) return linear_count(shift, f, margin_of(level));
  return detail::count_admissible_dfs(shift, f, margin_of(level), budget);
}

EnumerateOutcome enumerate_admissible(const Subshift& shift,
                                      const FiniteSubset& f, const Level& level,
                                      const BudgetConfig& budget) {
  validate_level(shift, level);
  if (f.empty())
    throw UsageError("enumerate_admissible needs a nonempty support");
  if (std::holds_alternative<ExactZ>(level))
    return ZAutomaton::build(shift).enumerate(f, budget);
  CompiledWindow w = detail::compile_window(shift, f, margin_of(level));
  detail::WindowRun run;
  run.goal = detail::WindowGoal::enumerate;
  auto r = detail::run_window(w, run, budget);
  return EnumerateOutcome{std::move(r.patterns), r.complete, r.usage};
}

ExtendOutcome extend_witness(const Subshift& shift, const Pattern& p,
                             const FiniteSubset& target, const Level& level,
                             const BudgetConfig& budget) {
  validate_level(shift, level);
  if (target.empty()) throw UsageError("extension target must be nonempty");
  if (!p.support.subset_of(shift.group, target))
    throw UsageError("pattern support must lie inside the extension target");
  if (std::holds_alternative<ExactZ>(level))
    return ZAutomaton::build(shift).extend(p, target, budget);
  if (shift.is_linear_rule())
    return linear_extend(shift, p, target, margin_of(level));
  CompiledWindow w = detail::compile_window(shift, target, margin_of(level));
  detail::WindowRun run;
  run.goal = detail::WindowGoal::first;
  run.pinned = detail::pins_from_pattern(w, p);
  auto r = detail::run_window(w, run, budget);
  return ExtendOutcome{std::move(r.witness), r.complete, r.usage};
}

MemberOutcome member_at_level(const Subshift& shift, const Pattern& p,
                              const Level& level, const BudgetConfig& budget) {
  validate_level(shift, level);
  if (p.empty()) return MemberOutcome{true, true, {}};
  if (std::holds_alternative<ExactZ>(level))
    return ZAutomaton::build(shift).member(p, budget);
  if (shift.is_linear_rule())
    return linear_member(shift, p, margin_of(level));
  ExtendOutcome e = extend_witness(shift, p, p.support, level, budget);
  return MemberOutcome{e.witness.has_value(), e.complete, e.usage};
}

LocalGlobalReport local_equals_global_check(const Subshift& shift,
                                            const FiniteSubset& f, int r_max,
                                            const BudgetConfig& budget) {
  if (r_max < 0) throw UsageError("r_max must be >= 0");
  LocalGlobalReport report;
  BudgetConfig remaining = budget;
  for (int r = 0; r <= r_max; ++r) {
    CountOutcome c = count_admissible(shift, f, LocalMargin{r}, remaining);
    report.usage.nodes += c.usage.nodes;
    report.rows.push_back({r, c.count, c.complete});
    if (!c.complete) {
      report.usage.exhausted = true;
      break;
    }
    remaining.nodes -= std::min(remaining.nodes, c.usage.nodes);
    if (!report.stabilized_at && r >= 1 &&
        report.rows[r].count == report.rows[r - 1].count)
      report.stabilized_at = r;
  }
  return report;
}

}  // namespace shiftlab

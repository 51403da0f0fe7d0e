#include "shiftlab/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "shiftlab/automaton.hpp"

namespace shiftlab {

double log_big(const BigInt& n) {
  if (n <= 0) throw UsageError("log of a nonpositive count");
  std::size_t bits = boost::multiprecision::msb(n);
  if (bits <= 900) return std::log(n.convert_to<double>());
  BigInt shifted = n >> (bits - 64);
  return std::log(shifted.convert_to<double>()) +
         static_cast<double>(bits - 64) * std::log(2.0);
}

namespace {

std::pair<std::string, FiniteSubset> window_for(const Group& g, int n) {
  if (g.is_lattice())
    return {"box:" + std::to_string(n), g.folner_window(n)};
  return {"ball:" + std::to_string(n), g.ball(n)};
}

}  // namespace

EntropySeries entropy_series(const Subshift& shift,
                             const std::vector<int>& windows,
                             const Level& level, const BudgetConfig& budget) {
  if (windows.empty()) throw UsageError("entropy series needs windows");
  EntropySeries series;
  series.level = level;
  series.folner_windows = shift.group.is_lattice();
  for (int n : windows) {
    auto [id, f] = window_for(shift.group, n);
    if (f.empty()) throw UsageError("entropy window must be nonempty");
    CountOutcome c = count_admissible(shift, f, level, budget);
    series.usage.nodes += c.usage.nodes;
    series.usage.exhausted |= c.usage.exhausted;
    EntropyWindowRow row;
    row.window_id = id;
    row.window_size = f.size();
    row.count = c.count;
    row.complete = c.complete;
    row.rate = (c.complete && c.count > 0)
                   ? log_big(c.count) / static_cast<double>(f.size())
                   : 0.0;
    series.rows.push_back(std::move(row));
  }
  return series;
}

NaiveEntropyBound naive_entropy_upper(
    const Subshift& shift, const std::vector<FiniteSubset>& candidates,
    const Level& level, const BudgetConfig& budget) {
  if (candidates.empty())
    throw UsageError("naive entropy needs candidate sets");
  NaiveEntropyBound bound;
  bool have = false;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CountOutcome c = count_admissible(shift, candidates[i], level, budget);
    bound.usage.nodes += c.usage.nodes;
    bound.usage.exhausted |= c.usage.exhausted;
    NaiveEntropyRow row;
    row.candidate = i;
    row.size = candidates[i].size();
    row.count = c.count;
    row.complete = c.complete;
    row.rate = (c.complete && c.count > 0)
                   ? log_big(c.count) / static_cast<double>(row.size)
                   : 0.0;
    if (c.complete && c.count > 0 && (!have || row.rate < bound.value)) {
      bound.value = row.rate;
      bound.argmin = i;
      have = true;
    }
    bound.rows.push_back(std::move(row));
  }
  if (!have) throw UsageError("no candidate produced a usable count");
  return bound;
}

std::optional<double> transfer_matrix_entropy(const Subshift& shift,
                                              int memory) {
  if (memory < 0) throw UsageError("memory must be >= 0");
  ZAutomaton automaton = ZAutomaton::build(shift, memory);
  return automaton.spectral_entropy();
}

namespace {

// All |cylinders|^|J| choice functions must be realized; conflicts between
// translated cylinders make a choice unrealizable and rule J out.
bool independent(const Subshift& shift, const std::vector<Pattern>& cylinders,
                 const std::vector<GroupElement>& j, const Level& level,
                 std::uint64_t* nodes, std::uint64_t node_cap) {
  const Group& g = shift.group;
  std::size_t k = cylinders.size();
  std::vector<std::size_t> choice(j.size(), 0);
  for (;;) {
    Pattern glued{FiniteSubset{}, {}};
    bool feasible = true;
    for (std::size_t i = 0; i < j.size() && feasible; ++i) {
      Pattern translated = translate(g, j[i], cylinders[choice[i]]);
      auto merged = try_glue(g, glued, translated, nullptr);
      if (!merged)
        feasible = false;
      else
        glued = *std::move(merged);
    }
    if (feasible) {
      BudgetConfig sub;
      sub.nodes = node_cap > *nodes ? node_cap - *nodes : 0;
      MemberOutcome m = member_at_level(shift, glued, level, sub);
      *nodes += m.usage.nodes + 1;
      if (!m.complete) throw ResourceError("independence budget exhausted");
      feasible = m.member;
    } else {
      *nodes += 1;
    }
    if (!feasible) return false;
    std::size_t pos = 0;
    while (pos < j.size() && ++choice[pos] == k) {
      choice[pos] = 0;
      ++pos;
    }
    if (pos == j.size()) return true;
  }
}

}  // namespace

IndependenceReport independence_density(const Subshift& shift,
                                        const std::vector<Pattern>& cylinders,
                                        const FiniteSubset& f,
                                        const Level& level,
                                        const BudgetConfig& budget) {
  validate_level(shift, level);
  if (cylinders.empty()) throw UsageError("need at least one cylinder");
  for (std::size_t i = 0; i < cylinders.size(); ++i) {
    if (cylinders[i].support != cylinders[0].support)
      throw UsageError("cylinders must share one support");
    for (std::size_t l = i + 1; l < cylinders.size(); ++l)
      if (cylinders[i] == cylinders[l])
        throw UsageError("cylinders must be pairwise distinct");
  }
  if (f.empty()) throw UsageError("F must be nonempty");

  IndependenceReport report;
  report.cylinders = cylinders;
  report.f = f;
  report.level = level;

  std::vector<GroupElement> best, current;
  std::uint64_t nodes = 0;
  bool exhausted = false;

  // Include-first depth-first search in canonical order; the first maximum
  // found is the canonical one.  Supersets of failing sets are pruned by
  // monotonicity.
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (exhausted) return;
    if (current.size() + (f.size() - idx) <= best.size()) return;
    if (idx == f.size()) return;
    current.push_back(f[idx]);
    bool ok = false;
    try {
      ok = independent(shift, cylinders, current, level, &nodes, budget.nodes);
    } catch (const ResourceError&) {
      exhausted = true;
    }
    if (ok) {
      if (current.size() > best.size()) best = current;
      rec(idx + 1);
    }
    current.pop_back();
    if (!exhausted) rec(idx + 1);
  };
  rec(0);

  report.best_set = FiniteSubset::of(shift.group, best);
  report.usage.nodes = nodes;
  report.usage.exhausted = exhausted;
  report.complete = !exhausted;
  return report;
}

MicrostateCount cyclic_microstate_count(const Subshift& shift, int n, int beta,
                                        const BudgetConfig& budget) {
  if (!(shift.group.is_lattice() && shift.group.rank() == 1))
    throw UsageError("cyclic microstates require the group Z");
  if (!shift.is_forbidden_rule())
    throw UsageError("cyclic microstates require an SFT rule");
  if (n < 1) throw UsageError("cycle length must be >= 1");
  if (beta < 0) throw UsageError("defect budget must be >= 0");

  MicrostateCount out;
  out.n = n;
  out.beta = beta;

  if (beta == 0) {
    ZAutomaton automaton = ZAutomaton::build(shift);
    out.count = automaton.cyclic_count(n);
    out.complete = true;
    out.usage.nodes = automaton.state_count() * static_cast<std::uint64_t>(n);
    return out;
  }

  // Positive defect budget: exhaustive scan over the k^n labelings, counting
  // positions at which some forbidden word starts (cyclically).
  const auto& rule = std::get<ForbiddenPatternsRule>(shift.rule);
  std::size_t k = shift.alphabet.size();
  double total_d = std::pow(static_cast<double>(k), n);
  if (total_d > static_cast<double>(budget.nodes)) {
    out.usage.exhausted = true;
    return out;
  }

  struct Word {
    std::vector<int> fixed;  // -1 = free
    int offset;
  };
  std::vector<Word> words;
  for (const auto& p : rule.patterns) {
    int lo = p.support[0].v[0], hi = p.support[0].v[0];
    for (const auto& site : p.support) {
      lo = std::min(lo, site.v[0]);
      hi = std::max(hi, site.v[0]);
    }
    Word w{std::vector<int>(hi - lo + 1, -1), lo};
    for (std::size_t i = 0; i < p.size(); ++i)
      w.fixed[p.support[i].v[0] - lo] = p.values[i];
    words.push_back(std::move(w));
  }

  std::vector<Symbol> lab(n, 0);
  std::uint64_t total = static_cast<std::uint64_t>(total_d);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      lab[i] = static_cast<Symbol>(c % k);
      c /= k;
    }
    int violations = 0;
    for (int start = 0; start < n && violations <= beta; ++start) {
      bool hit = false;
      for (const auto& w : words) {
        bool match = true;
        for (std::size_t off = 0; off < w.fixed.size() && match; ++off) {
          if (w.fixed[off] < 0) continue;
          int pos = ((start + static_cast<int>(off)) % n + n) % n;
          if (lab[pos] != w.fixed[off]) match = false;
        }
        if (match) {
          hit = true;
          break;
        }
      }
      if (hit) ++violations;
    }
    if (violations <= beta) ++out.count;
    ++out.usage.nodes;
  }
  out.complete = true;
  return out;
}

}  // namespace shiftlab

#include "shiftlab/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace shiftlab {

namespace {

// Forbidden patterns as contiguous words: gaps expanded over the alphabet.
std::vector<std::vector<Symbol>> forbidden_words(const Subshift& shift,
                                                 std::size_t expansion_cap) {
  const auto& rule = std::get<ForbiddenPatternsRule>(shift.rule);
  std::vector<std::vector<Symbol>> words;
  std::size_t k = shift.alphabet.size();
  for (const auto& p : rule.patterns) {
    int lo = p.support[0].v[0], hi = p.support[0].v[0];
    for (const auto& site : p.support) {
      lo = std::min(lo, site.v[0]);
      hi = std::max(hi, site.v[0]);
    }
    std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<int> fixed(len, -1);
    for (std::size_t i = 0; i < p.size(); ++i)
      fixed[p.support[i].v[0] - lo] = p.values[i];
    std::vector<std::vector<Symbol>> expanded{{}};
    for (std::size_t pos = 0; pos < len; ++pos) {
      std::vector<std::vector<Symbol>> next;
      for (const auto& w : expanded) {
        if (fixed[pos] >= 0) {
          auto e = w;
          e.push_back(static_cast<Symbol>(fixed[pos]));
          next.push_back(std::move(e));
        } else {
          for (Symbol c = 0; c < k; ++c) {
            auto e = w;
            e.push_back(c);
            next.push_back(std::move(e));
          }
        }
        if (next.size() > expansion_cap)
          throw ResourceError("forbidden pattern expands to too many words");
      }
      expanded = std::move(next);
    }
    for (auto& w : expanded) words.push_back(std::move(w));
  }
  return words;
}

// Strongly connected components, iterative Tarjan.  Returns component ids.
std::vector<std::uint32_t> scc_ids(
    std::size_t n, const std::function<void(std::size_t, std::vector<std::uint32_t>&)>& out_edges,
    std::size_t* n_comps) {
  constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  std::vector<std::uint32_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::uint32_t next_index = 0, next_comp = 0;

  struct Frame {
    std::uint32_t v;
    std::uint32_t edge = 0;
    std::vector<std::uint32_t> succ;
  };
  std::vector<Frame> frames;
  std::vector<std::uint32_t> succ_buf;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    frames.push_back({static_cast<std::uint32_t>(root)});
    out_edges(root, frames.back().succ);
    index[root] = low[root] = next_index++;
    stack.push_back(static_cast<std::uint32_t>(root));
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < f.succ.size()) {
        std::uint32_t wv = f.succ[f.edge++];
        if (index[wv] == kNone) {
          index[wv] = low[wv] = next_index++;
          stack.push_back(wv);
          on_stack[wv] = 1;
          frames.push_back({wv});
          out_edges(wv, frames.back().succ);
        } else if (on_stack[wv]) {
          low[f.v] = std::min(low[f.v], index[wv]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          for (;;) {
            std::uint32_t wv = stack.back();
            stack.pop_back();
            on_stack[wv] = 0;
            comp[wv] = next_comp;
            if (wv == f.v) break;
          }
          ++next_comp;
        }
        std::uint32_t v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  *n_comps = next_comp;
  return comp;
}

}  // namespace

std::size_t ZAutomaton::next_state(std::size_t state, Symbol c) const {
  if (m_ == 0) return 0;
  std::size_t base = 1;
  for (int i = 1; i < m_; ++i) base *= n_symbols_;
  return (state % base) * n_symbols_ + c;
}

std::vector<Symbol> ZAutomaton::state_word(std::size_t state) const {
  std::vector<Symbol> w(m_);
  for (int i = m_ - 1; i >= 0; --i) {
    w[i] = static_cast<Symbol>(state % n_symbols_);
    state /= n_symbols_;
  }
  return w;
}

ZAutomaton ZAutomaton::build(const Subshift& shift, std::optional<int> memory,
                             std::size_t state_cap) {
  if (!(shift.group.is_lattice() && shift.group.rank() == 1))
    throw UsageError("the forbidden-word automaton requires the group Z");
  if (!shift.is_forbidden_rule())
    throw UsageError("the forbidden-word automaton requires an SFT rule");

  ZAutomaton a;
  a.shift_ = &shift;
  a.n_symbols_ = shift.alphabet.size();

  std::vector<std::vector<Symbol>> words = forbidden_words(shift, 65536);
  int max_len = 0;
  for (const auto& w : words) max_len = std::max<int>(max_len, w.size());
  a.m_ = std::max(memory.value_or(0), max_len > 0 ? max_len - 1 : 0);
  if (memory && *memory < (max_len > 0 ? max_len - 1 : 0))
    throw UsageError("automaton memory is smaller than the longest word");

  std::size_t n_states = 1;
  for (int i = 0; i < a.m_; ++i) {
    n_states *= a.n_symbols_;
    if (n_states > state_cap)
      throw ResourceError("automaton state count exceeds cap");
  }
  a.n_states_ = n_states;

  a.valid_.assign(n_states * a.n_symbols_, 1);
  std::vector<Symbol> window(a.m_ + 1);
  for (std::size_t u = 0; u < n_states; ++u) {
    std::vector<Symbol> wu = a.state_word(u);
    std::copy(wu.begin(), wu.end(), window.begin());
    for (Symbol c = 0; c < a.n_symbols_; ++c) {
      window[a.m_] = c;
      bool ok = true;
      for (const auto& fw : words) {
        if (fw.size() > window.size()) continue;
        if (std::equal(fw.begin(), fw.end(), window.end() - fw.size())) {
          ok = false;
          break;
        }
      }
      if (!ok) a.valid_[u * a.n_symbols_ + c] = 0;
    }
  }

  // Trim to states on a bi-infinite path: reach a cyclic component and be
  // reachable from one.
  auto out_edges = [&a](std::size_t u, std::vector<std::uint32_t>& succ) {
    succ.clear();
    for (Symbol c = 0; c < a.n_symbols_; ++c)
      if (a.valid_transition(u, c))
        succ.push_back(static_cast<std::uint32_t>(a.next_state(u, c)));
  };
  std::size_t n_comps = 0;
  std::vector<std::uint32_t> comp = scc_ids(n_states, out_edges, &n_comps);
  std::vector<std::uint32_t> comp_size(n_comps, 0);
  std::vector<std::uint8_t> comp_cyclic(n_comps, 0);
  for (std::size_t u = 0; u < n_states; ++u) ++comp_size[comp[u]];
  for (std::size_t u = 0; u < n_states; ++u) {
    for (Symbol c = 0; c < a.n_symbols_; ++c) {
      if (!a.valid_transition(u, c)) continue;
      std::size_t v = a.next_state(u, c);
      if (comp[u] == comp[v] && (comp_size[comp[u]] >= 2 || u == v))
        comp_cyclic[comp[u]] = 1;
    }
  }
  // reachable-from-cyclic (forward closure)
  std::vector<std::uint8_t> fwd(n_states, 0), bwd(n_states, 0);
  std::vector<std::uint32_t> queue;
  for (std::size_t u = 0; u < n_states; ++u)
    if (comp_cyclic[comp[u]]) {
      fwd[u] = 1;
      queue.push_back(static_cast<std::uint32_t>(u));
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t u = queue[qi];
    for (Symbol c = 0; c < a.n_symbols_; ++c) {
      if (!a.valid_transition(u, c)) continue;
      std::size_t v = a.next_state(u, c);
      if (!fwd[v]) {
        fwd[v] = 1;
        queue.push_back(static_cast<std::uint32_t>(v));
      }
    }
  }
  // can-reach-cyclic (backward closure over reversed edges)
  std::vector<std::vector<std::uint32_t>> rev(n_states);
  for (std::size_t u = 0; u < n_states; ++u)
    for (Symbol c = 0; c < a.n_symbols_; ++c)
      if (a.valid_transition(u, c))
        rev[a.next_state(u, c)].push_back(static_cast<std::uint32_t>(u));
  queue.clear();
  for (std::size_t u = 0; u < n_states; ++u)
    if (comp_cyclic[comp[u]]) {
      bwd[u] = 1;
      queue.push_back(static_cast<std::uint32_t>(u));
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (std::uint32_t v : rev[queue[qi]]) {
      if (!bwd[v]) {
        bwd[v] = 1;
        queue.push_back(v);
      }
    }
  }
  a.alive_.assign(n_states, 0);
  for (std::size_t u = 0; u < n_states; ++u) {
    a.alive_[u] = fwd[u] && bwd[u];
    if (a.alive_[u]) ++a.alive_count_;
  }
  return a;
}

namespace {

struct StateSet {
  std::vector<std::uint64_t> bits;
  explicit StateSet(std::size_t n) : bits((n + 63) / 64, 0) {}
  void set(std::size_t i) { bits[i / 64] |= std::uint64_t(1) << (i % 64); }
  bool get(std::size_t i) const {
    return (bits[i / 64] >> (i % 64)) & 1u;
  }
  bool any() const {
    for (auto w : bits)
      if (w) return true;
    return false;
  }
};

struct ZCoords {
  std::vector<int> sorted;  // ascending coordinates
  int lo = 0, hi = 0;
  bool contiguous = false;
};

ZCoords z_coords(const FiniteSubset& f) {
  ZCoords out;
  for (const auto& e : f) out.sorted.push_back(e.v[0]);
  std::sort(out.sorted.begin(), out.sorted.end());
  out.lo = out.sorted.front();
  out.hi = out.sorted.back();
  out.contiguous =
      static_cast<std::size_t>(out.hi - out.lo + 1) == out.sorted.size();
  return out;
}

}  // namespace

CountOutcome ZAutomaton::count(const FiniteSubset& f,
                               const BudgetConfig& budget) const {
  CountOutcome out;
  if (f.empty()) throw UsageError("count needs a nonempty support");
  if (empty_shift()) {
    out.complete = true;
    return out;
  }
  ZCoords zc = z_coords(f);
  std::size_t n = f.size();

  if (zc.contiguous && static_cast<int>(n) >= m_) {
    // Words of length n: an alive start state, then n-m alive steps.
    std::vector<BigInt> v(n_states_);
    for (std::size_t u = 0; u < n_states_; ++u)
      if (alive_[u]) v[u] = 1;
    for (std::size_t step = 0; step + m_ < n; ++step) {
      std::vector<BigInt> next(n_states_);
      for (std::size_t u = 0; u < n_states_; ++u) {
        if (!alive_[u] || v[u] == 0) continue;
        for (Symbol c = 0; c < n_symbols_; ++c) {
          out.usage.nodes++;
          if (!valid_transition(u, c)) continue;
          std::size_t w = next_state(u, c);
          if (alive_[w]) next[w] += v[u];
        }
      }
      v = std::move(next);
    }
    for (std::size_t u = 0; u < n_states_; ++u) out.count += v[u];
    out.complete = true;
    return out;
  }

  if (zc.contiguous) {  // n < m: distinct prefixes of alive state words
    std::set<std::vector<Symbol>> prefixes;
    for (std::size_t u = 0; u < n_states_; ++u) {
      out.usage.nodes++;
      if (!alive_[u]) continue;
      std::vector<Symbol> w = state_word(u);
      w.resize(n);
      prefixes.insert(std::move(w));
    }
    out.count = prefixes.size();
    out.complete = true;
    return out;
  }

  EnumerateOutcome e = enumerate(f, budget);
  out.count = e.patterns.size();
  out.complete = e.complete;
  out.usage = e.usage;
  return out;
}

EnumerateOutcome ZAutomaton::enumerate(const FiniteSubset& f,
                                       const BudgetConfig& budget) const {
  EnumerateOutcome out;
  if (f.empty()) throw UsageError("enumerate needs a nonempty support");
  if (empty_shift()) {
    out.complete = true;
    return out;
  }
  ZCoords zc = z_coords(f);
  const Group& g = shift_->group;
  std::size_t hull = static_cast<std::size_t>(zc.hi - zc.lo + 1);

  // Subset-of-states sweep over the hull, branching only at sites of F.
  std::vector<int> site_index(hull, -1);  // hull offset -> f canonical index
  for (std::size_t i = 0; i < f.size(); ++i)
    site_index[f[i].v[0] - zc.lo] = static_cast<int>(i);

  StateSet init(n_states_);
  for (std::size_t u = 0; u < n_states_; ++u)
    if (alive_[u]) init.set(u);

  std::vector<Symbol> chosen(f.size(), 0);
  std::uint64_t nodes = 0;
  bool aborted = false;

  auto advance = [&](const StateSet& s, int fixed, StateSet& t) {
    for (std::size_t u = 0; u < n_states_; ++u) {
      if (!s.get(u)) continue;
      for (Symbol c = 0; c < n_symbols_; ++c) {
        if (fixed >= 0 && c != fixed) continue;
        if (!valid_transition(u, c)) continue;
        std::size_t v = next_state(u, c);
        if (alive_[v]) t.set(v);
      }
    }
  };

  std::function<void(std::size_t, const StateSet&)> rec =
      [&](std::size_t offset, const StateSet& s) {
        if (aborted) return;
        if (offset == hull) {
          out.patterns.push_back(Pattern{f, chosen});
          return;
        }
        int fi = site_index[offset];
        if (fi < 0) {
          StateSet t(n_states_);
          advance(s, -1, t);
          if (t.any()) rec(offset + 1, t);
          return;
        }
        for (Symbol c = 0; c < n_symbols_; ++c) {
          if (++nodes > budget.nodes) {
            aborted = true;
            return;
          }
          StateSet t(n_states_);
          advance(s, c, t);
          if (!t.any()) continue;
          chosen[static_cast<std::size_t>(fi)] = c;
          rec(offset + 1, t);
          if (aborted) return;
        }
      };
  rec(0, init);

  std::sort(out.patterns.begin(), out.patterns.end(),
            [&g](const Pattern& a, const Pattern& b) {
              return pattern_less(g, a, b);
            });
  out.usage.nodes = nodes;
  out.usage.exhausted = aborted;
  out.complete = !aborted;
  return out;
}

MemberOutcome ZAutomaton::member(const Pattern& p,
                                 const BudgetConfig& budget) const {
  MemberOutcome out;
  out.complete = true;
  if (p.empty()) {
    out.member = !empty_shift();
    return out;
  }
  if (empty_shift()) {
    out.member = false;
    return out;
  }
  (void)budget;
  ZCoords zc = z_coords(p.support);
  std::size_t hull = static_cast<std::size_t>(zc.hi - zc.lo + 1);
  std::vector<int> fixed(hull, -1);
  for (std::size_t i = 0; i < p.size(); ++i)
    fixed[p.support[i].v[0] - zc.lo] = p.values[i];

  StateSet cur(n_states_);
  for (std::size_t u = 0; u < n_states_; ++u)
    if (alive_[u]) cur.set(u);
  for (std::size_t offset = 0; offset < hull; ++offset) {
    StateSet next(n_states_);
    out.usage.nodes += n_symbols_;
    for (std::size_t u = 0; u < n_states_; ++u) {
      if (!cur.get(u)) continue;
      for (Symbol c = 0; c < n_symbols_; ++c) {
        if (fixed[offset] >= 0 && c != fixed[offset]) continue;
        if (!valid_transition(u, c)) continue;
        std::size_t v = next_state(u, c);
        if (alive_[v]) next.set(v);
      }
    }
    if (!next.any()) {
      out.member = false;
      return out;
    }
    cur = std::move(next);
  }
  out.member = true;
  return out;
}

ExtendOutcome ZAutomaton::extend(const Pattern& p, const FiniteSubset& target,
                                 const BudgetConfig& budget) const {
  const Group& g = shift_->group;
  ExtendOutcome out;
  out.complete = true;
  MemberOutcome base = member(p, budget);
  out.usage.nodes += base.usage.nodes;
  if (!base.member) return out;

  // Greedy canonical-least completion, one target site at a time.
  std::vector<std::pair<GroupElement, Symbol>> entries;
  for (std::size_t i = 0; i < p.size(); ++i)
    entries.emplace_back(p.support[i], p.values[i]);
  Pattern cur = p;
  for (const auto& site : target) {
    if (p.support.contains(g, site)) continue;
    bool placed = false;
    for (Symbol c = 0; c < n_symbols_; ++c) {
      auto trial = entries;
      trial.emplace_back(site, c);
      Pattern t = make_pattern(g, shift_->alphabet, trial);
      MemberOutcome m = member(t, budget);
      out.usage.nodes += m.usage.nodes;
      if (m.member) {
        entries = std::move(trial);
        cur = std::move(t);
        placed = true;
        break;
      }
    }
    if (!placed) throw Error("internal: extension lost feasibility");
  }
  out.witness = restrict_to(g, cur, target);
  return out;
}

std::optional<double> ZAutomaton::spectral_entropy() const {
  if (empty_shift()) return std::nullopt;
  auto out_edges = [this](std::size_t u, std::vector<std::uint32_t>& succ) {
    succ.clear();
    if (!alive_[u]) return;
    for (Symbol c = 0; c < n_symbols_; ++c) {
      if (!valid_transition(u, c)) continue;
      std::size_t v = next_state(u, c);
      if (alive_[v]) succ.push_back(static_cast<std::uint32_t>(v));
    }
  };
  std::size_t n_comps = 0;
  std::vector<std::uint32_t> comp = scc_ids(n_states_, out_edges, &n_comps);
  std::vector<std::vector<std::uint32_t>> members(n_comps);
  for (std::size_t u = 0; u < n_states_; ++u)
    if (alive_[u]) members[comp[u]].push_back(static_cast<std::uint32_t>(u));

  double best = 0.0;
  bool any_cycle = false;
  for (const auto& ms : members) {
    if (ms.empty()) continue;
    // adjacency with multiplicity, restricted to the component
    std::size_t n = ms.size();
    std::vector<std::uint32_t> local(n_states_, 0xFFFFFFFFu);
    for (std::size_t i = 0; i < n; ++i) local[ms[i]] = i;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
    bool has_edge = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row(n, 0.0);
      for (Symbol c = 0; c < n_symbols_; ++c) {
        std::size_t u = ms[i];
        if (!valid_transition(u, c)) continue;
        std::size_t v = next_state(u, c);
        if (local[v] != 0xFFFFFFFFu) row[local[v]] += 1.0;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (row[j] > 0) {
          adj[i].push_back({static_cast<std::uint32_t>(j), row[j]});
          has_edge = true;
        }
    }
    if (!has_edge) continue;  // singleton without self-loop
    any_cycle = true;
    // Power iteration on A + I with Collatz-Wielandt bounds.
    std::vector<double> x(n, 1.0), y(n);
    double rho = 1.0;
    for (int iter = 0; iter < 100000; ++iter) {
      double lo = 1e300, hi = 0.0, norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];  // + I
        for (auto [j, wgt] : adj[i]) s += wgt * x[j];
        y[i] = s;
        double ratio = s / x[i];
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        norm = std::max(norm, s);
      }
      for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
      rho = (lo + hi) / 2.0;
      if (hi - lo <= 1e-12 * hi) break;
    }
    best = std::max(best, rho - 1.0);
  }
  if (!any_cycle) return std::nullopt;
  return std::log(best);
}

BigInt ZAutomaton::cyclic_count(int n) const {
  if (n < 1) throw UsageError("cycle length must be >= 1");
  if (n_states_ > 4096)
    throw ResourceError("cyclic count needs a smaller automaton memory");
  BigInt total = 0;
  for (std::size_t q = 0; q < n_states_; ++q) {
    std::vector<BigInt> v(n_states_);
    v[q] = 1;
    for (int step = 0; step < n; ++step) {
      std::vector<BigInt> next(n_states_);
      for (std::size_t u = 0; u < n_states_; ++u) {
        if (v[u] == 0) continue;
        for (Symbol c = 0; c < n_symbols_; ++c)
          if (valid_transition(u, c)) next[next_state(u, c)] += v[u];
      }
      v = std::move(next);
    }
    total += v[q];
  }
  return total;
}

}  // namespace shiftlab

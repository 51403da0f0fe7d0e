#pragma once

// Executes the declarative expectations carried by zoo entries.  Returns a
// deterministic one-line fingerprint per expectation so determinism checks
// can compare runs byte for byte.

#include <cmath>
#include <sstream>

#include "shiftlab/engine.hpp"
#include "shiftlab/entropy.hpp"
#include "shiftlab/specfile.hpp"
#include "shiftlab/tmp.hpp"
#include "shiftlab/zoo.hpp"

namespace shiftlab::acceptance {

struct ExpectationResult {
  bool ok = false;
  std::string detail;  // deterministic fingerprint
};

inline ExpectationResult run_expectation(const ZooEntry& entry,
                                         const Expectation& exp,
                                         const BudgetConfig& budget) {
  const Subshift& shift = entry.shift;
  const Group& g = shift.group;
  Level level = parse_level(exp.level);
  std::ostringstream out;
  bool ok = false;
  using Kind = Expectation::Kind;

  switch (exp.kind) {
    case Kind::window_count: {
      FiniteSubset f = parse_set_descriptor(g, exp.window);
      CountOutcome c = count_admissible(shift, f, level, budget);
      ok = c.complete && c.count == exp.count;
      out << "count(" << exp.window << ")=" << c.count.str();
      break;
    }
    case Kind::window_rate_eq:
    case Kind::window_rate_max: {
      FiniteSubset f = parse_set_descriptor(g, exp.window);
      CountOutcome c = count_admissible(shift, f, level, budget);
      double rate = c.count > 0
                        ? log_big(c.count) / static_cast<double>(f.size())
                        : 0.0;
      if (exp.kind == Kind::window_rate_eq)
        ok = c.complete && std::abs(rate - exp.value) <= exp.tol;
      else
        ok = c.complete && rate <= exp.value;
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%.12g", rate);
      out << "rate(" << exp.window << ")=" << buf;
      break;
    }
    case Kind::entropy_oracle: {
      auto h = transfer_matrix_entropy(shift, exp.memory);
      ok = h.has_value() && std::abs(*h - exp.value) <= exp.tol;
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%.12g", h.value_or(-1.0));
      out << "transfer-matrix=" << buf;
      break;
    }
    case Kind::microstate_count: {
      MicrostateCount mc = cyclic_microstate_count(shift, exp.n, exp.beta, budget);
      ok = mc.complete && mc.count == exp.count;
      out << "microstates(" << exp.n << "," << exp.beta
          << ")=" << mc.count.str();
      break;
    }
    case Kind::tmp_holds:
    case Kind::tmp_counterexample: {
      FiniteSubset a = parse_set_descriptor(g, exp.a_set);
      FiniteSubset b = parse_set_descriptor(g, exp.b_set);
      FiniteSubset w = parse_set_descriptor(g, exp.window);
      Verdict v = check_memory_set(shift, a, b, w, level, budget);
      if (exp.kind == Kind::tmp_holds) {
        ok = v.holds();
        out << "tmp=holds:" << (v.holds() ? "yes" : "no");
      } else {
        const auto* ce = v.counterexample();
        ok = ce != nullptr;
        out << "tmp=counterexample:" << (ce ? "yes" : "no");
        if (ce) {
          out << " x=";
          for (Symbol s : ce->x.values) out << int(s);
          out << " y=";
          for (Symbol s : ce->y.values) out << int(s);
        }
      }
      break;
    }
    case Kind::pair_exists:
    case Kind::pair_none: {
      FiniteSubset a = parse_set_descriptor(g, exp.a_set);
      FiniteSubset w = parse_set_descriptor(g, exp.window);
      PairSearchOutcome p = find_interchangeable_pair(shift, a, w, level, budget);
      if (exp.kind == Kind::pair_exists)
        ok = p.witness.has_value();
      else
        ok = p.complete && !p.witness.has_value();
      out << "pair=" << (p.witness ? "witness" : p.complete ? "none" : "budget");
      if (p.witness) {
        out << " p=";
        for (Symbol s : p.witness->p.values) out << int(s);
        out << " q=";
        for (Symbol s : p.witness->q.values) out << int(s);
      }
      break;
    }
    case Kind::homoclinic_exists:
    case Kind::homoclinic_none: {
      auto bg = shift.alphabet.index_of(exp.background);
      std::optional<int> margin =
          exp.margin >= 0 ? std::optional<int>(exp.margin) : std::nullopt;
      HomoclinicOutcome h =
          homoclinic_search(shift, *bg, exp.radius, margin, budget);
      if (exp.kind == Kind::homoclinic_exists)
        ok = h.witness.has_value();
      else
        ok = h.complete && !h.witness.has_value();
      out << "homoclinic(r=" << exp.radius
          << ")=" << (h.witness ? "witness" : h.complete ? "none" : "budget");
      if (h.witness) {
        out << " v=";
        for (Symbol s : h.witness->values) out << int(s);
      }
      break;
    }
    case Kind::independence_size: {
      FiniteSubset f = parse_set_descriptor(g, exp.window);
      std::vector<Pattern> cylinders;
      for (const auto& cyl : exp.cylinders) {
        std::vector<std::pair<GroupElement, Symbol>> entries;
        for (const auto& [site, sym] : cyl)
          entries.emplace_back(g.parse_element(site),
                               *shift.alphabet.index_of(sym));
        cylinders.push_back(make_pattern(g, shift.alphabet, entries));
      }
      IndependenceReport r =
          independence_density(shift, cylinders, f, level, budget);
      ok = r.complete &&
           r.best_set.size() == static_cast<std::size_t>(exp.expected_size);
      out << "independence(" << exp.window << ")=" << r.best_set.size();
      break;
    }
    case Kind::local_global_stable: {
      FiniteSubset f = parse_set_descriptor(g, exp.window);
      LocalGlobalReport r =
          local_equals_global_check(shift, f, exp.r_max, budget);
      ok = !r.rows.empty();
      out << "local-global(" << exp.window << ")=";
      for (const auto& row : r.rows) {
        ok = ok && row.complete && row.count == r.rows[0].count;
        out << row.count.str() << ";";
      }
      break;
    }
    case Kind::extends_true: {
      FiniteSubset target = parse_set_descriptor(g, exp.window);
      std::vector<std::pair<GroupElement, Symbol>> entries;
      for (const auto& [site, sym] : exp.cylinders.at(0))
        entries.emplace_back(g.parse_element(site),
                             *shift.alphabet.index_of(sym));
      Pattern p = make_pattern(g, shift.alphabet, entries);
      ExtendOutcome e = extend_witness(shift, p, target, level, budget);
      ok = e.witness.has_value();
      out << "extends(" << exp.window << ")=" << (ok ? "yes" : "no");
      break;
    }
  }
  return {ok, out.str()};
}

}  // namespace shiftlab::acceptance

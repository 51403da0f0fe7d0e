#pragma once

// Brute-force oracles for the test suites.  Everything here recomputes
// admissibility directly from the rule definition, independent of the
// engine's compiled-instance, automaton and GF(2) paths.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "shiftlab/engine.hpp"
#include "shiftlab/zoo.hpp"

namespace shiftlab::testing {

// Directly checks every translated constraint with full support inside the
// pattern.  Candidate translates g are read off pairs (site, h): if
// g.support(q) fits inside support(p) then g = site * h^{-1} for some pair.
inline bool naive_admissible(const Subshift& shift, const Pattern& p) {
  const Group& g = shift.group;
  auto inside = [&](const GroupElement& g0, const FiniteSubset& support) {
    for (const auto& h : support)
      if (!p.support.contains(g, g.mul(g0, h))) return false;
    return true;
  };
  if (const auto* fp = std::get_if<ForbiddenPatternsRule>(&shift.rule)) {
    for (const auto& q : fp->patterns) {
      for (const auto& site : p.support) {
        for (const auto& h : q.support) {
          GroupElement g0 = g.mul(site, g.inv(h));
          if (!inside(g0, q.support)) continue;
          bool match = true;
          for (std::size_t i = 0; i < q.size() && match; ++i)
            match = p.at(g, g.mul(g0, q.support[i])) == q.values[i];
          if (match) return false;
        }
      }
    }
    return true;
  }
  if (const auto* lin = std::get_if<LinearGf2Rule>(&shift.rule)) {
    for (const auto& s : lin->supports) {
      for (const auto& site : p.support) {
        for (const auto& h : s) {
          GroupElement g0 = g.mul(site, g.inv(h));
          if (!inside(g0, s)) continue;
          int parity = 0;
          for (const auto& hh : s) parity ^= p.at(g, g.mul(g0, hh));
          if (parity) return false;
        }
      }
    }
    return true;
  }
  BuiltinPredicate which = std::get<PredicateRule>(shift.rule).which;
  if (which == BuiltinPredicate::sunny_side_up) {
    int ones = 0;
    Symbol one = *shift.alphabet.index_of("1");
    for (Symbol v : p.values) ones += (v == one);
    return ones <= 1;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    GroupElement step = g.parse_element(shift.alphabet.name(p.values[i]));
    auto partner = p.find(g, g.mul(p.support[i], step));
    if (!partner) continue;
    if (!(g.parse_element(shift.alphabet.name(*partner)) == g.inv(step)))
      return false;
  }
  return true;
}

// L^{loc,r}_F by exhausting all |alphabet|^|F.B_r| assignments.
inline std::set<std::vector<Symbol>> brute_local_patterns(
    const Subshift& shift, const FiniteSubset& f, int margin) {
  const Group& g = shift.group;
  FiniteSubset e = margin == 0 ? f : f.product(g, g.ball(margin));
  std::size_t k = shift.alphabet.size();
  std::vector<std::size_t> f_index;
  for (const auto& site : f) f_index.push_back(*e.index_of(g, site));
  std::set<std::vector<Symbol>> out;
  std::vector<Symbol> values(e.size(), 0);
  for (;;) {
    if (naive_admissible(shift, Pattern{e, values})) {
      std::vector<Symbol> proj(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) proj[i] = values[f_index[i]];
      out.insert(std::move(proj));
    }
    std::size_t pos = 0;
    while (pos < values.size() && ++values[pos] == k) {
      values[pos] = 0;
      ++pos;
    }
    if (pos == values.size()) break;
  }
  return out;
}

// Globally admissible binary words of a Z SFT by brute force: a word is
// admissible iff it occurs in some admissible word with `pad` extra symbols
// on both sides.  For the small test systems pad = 8 is far beyond every
// forbidden-word length.
inline std::set<std::string> brute_z_words(
    const std::vector<std::string>& forbidden, int len, int pad = 8) {
  auto clean = [&](const std::string& w) {
    for (const auto& f : forbidden)
      if (w.find(f) != std::string::npos) return false;
    return true;
  };
  std::set<std::string> out;
  int total = len + 2 * pad;
  for (std::uint64_t code = 0; code < (std::uint64_t(1) << total); ++code) {
    std::string w(total, '0');
    for (int i = 0; i < total; ++i)
      if ((code >> i) & 1) w[i] = '1';
    if (clean(w)) out.insert(w.substr(pad, len));
  }
  return out;
}

inline Subshift random_z_sft(std::mt19937& rng) {
  Group z = Group::integer_lattice(1);
  Alphabet ab({"0", "1"}, true);
  std::uniform_int_distribution<int> n_words(1, 3), word_len(1, 3), bit(0, 1);
  ForbiddenPatternsRule rule;
  int n = n_words(rng);
  for (int i = 0; i < n; ++i) {
    int len = word_len(rng);
    std::vector<std::pair<GroupElement, Symbol>> entries;
    for (int pos = 0; pos < len; ++pos)
      entries.emplace_back(GroupElement{{pos}},
                           static_cast<Symbol>(bit(rng)));
    Pattern p = make_pattern(z, ab, entries);
    bool dup = false;
    for (const auto& q : rule.patterns) dup |= (q == p);
    if (!dup) rule.patterns.push_back(std::move(p));
  }
  return Subshift(z, ab, std::move(rule), "random-sft");
}

inline FiniteSubset z_interval(const Group& z, int lo, int hi) {
  std::vector<GroupElement> elems;
  for (int i = lo; i <= hi; ++i) elems.push_back(GroupElement{{i}});
  return FiniteSubset::of(z, std::move(elems));
}

}  // namespace shiftlab::testing

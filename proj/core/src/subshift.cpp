#include "shiftlab/subshift.hpp"

#include <algorithm>
#include <charconv>

namespace shiftlab {

const char* predicate_name(BuiltinPredicate p) {
  switch (p) {
    case BuiltinPredicate::sunny_side_up:
      return "sunny-side-up";
    case BuiltinPredicate::perfect_matching:
      return "perfect-matching";
  }
  throw UsageError("unknown predicate");
}

BuiltinPredicate parse_predicate(const std::string& name) {
  if (name == "sunny-side-up") return BuiltinPredicate::sunny_side_up;
  if (name == "perfect-matching") return BuiltinPredicate::perfect_matching;
  throw UsageError("unknown predicate '" + name +
                   "' (known: sunny-side-up, perfect-matching)");
}

namespace {

void validate_rule(const Group& group, const Alphabet& alphabet,
                   const Rule& rule) {
  if (const auto* fp = std::get_if<ForbiddenPatternsRule>(&rule)) {
    for (const auto& p : fp->patterns) {
      if (p.empty())
        throw UsageError("forbidden patterns must have nonempty support");
      for (const auto& site : p.support) group.validate(site);
      for (Symbol s : p.values)
        if (s >= alphabet.size())
          throw UsageError("forbidden pattern uses a symbol outside the alphabet");
    }
  } else if (const auto* lin = std::get_if<LinearGf2Rule>(&rule)) {
    if (!alphabet.gf2())
      throw UsageError("linear-gf2 rules require the gf2 alphabet {0, 1}");
    if (lin->supports.empty())
      throw UsageError("linear-gf2 rules need at least one support");
    for (const auto& s : lin->supports) {
      if (s.empty()) throw UsageError("linear-gf2 supports must be nonempty");
      for (const auto& site : s) group.validate(site);
    }
  } else {
    const auto& pred = std::get<PredicateRule>(rule);
    if (pred.which == BuiltinPredicate::sunny_side_up) {
      if (!alphabet.index_of("1"))
        throw UsageError("sunny-side-up needs a symbol named '1'");
    } else if (pred.which == BuiltinPredicate::perfect_matching) {
      if (!group.is_free())
        throw UsageError("perfect-matching is defined over free groups");
      if (alphabet.size() != 2 * static_cast<std::size_t>(group.rank()))
        throw UsageError(
            "perfect-matching needs one symbol per generator and inverse");
      for (std::size_t i = 0; i < alphabet.size(); ++i) {
        GroupElement e = group.parse_element(alphabet.name(i));
        if (group.word_length(e) != 1)
          throw UsageError("perfect-matching symbols must name generators");
      }
    }
  }
}

}  // namespace

Subshift::Subshift(Group group_in, Alphabet alphabet_in, Rule rule_in,
                   std::string name_in)
    : group(std::move(group_in)),
      alphabet(std::move(alphabet_in)),
      rule(std::move(rule_in)),
      name(std::move(name_in)) {
  validate_rule(group, alphabet, rule);
}

int Subshift::rule_diameter() const {
  auto diameter = [&](const FiniteSubset& s) {
    int d = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        d = std::max(d, group.distance(s[i], s[j]));
    return d;
  };
  int out = 0;
  if (const auto* fp = std::get_if<ForbiddenPatternsRule>(&rule)) {
    for (const auto& p : fp->patterns) out = std::max(out, diameter(p.support));
  } else if (const auto* lin = std::get_if<LinearGf2Rule>(&rule)) {
    for (const auto& s : lin->supports) out = std::max(out, diameter(s));
  }
  return out;
}

void validate_level(const Subshift& shift, const Level& level) {
  if (std::holds_alternative<ExactZ>(level)) {
    if (!(shift.group.is_lattice() && shift.group.rank() == 1))
      throw UsageError("exact-z level requires the group Z");
    if (!shift.is_forbidden_rule())
      throw UsageError("exact-z level requires a forbidden-patterns rule");
  } else {
    if (std::get<LocalMargin>(level).r < 0)
      throw UsageError("local margin must be >= 0");
  }
}

std::string format_level(const Level& level) {
  if (std::holds_alternative<ExactZ>(level)) return "exact-z";
  return "local:" + std::to_string(std::get<LocalMargin>(level).r);
}

Level parse_level(const std::string& text) {
  if (text == "exact-z") return ExactZ{};
  if (text.rfind("local:", 0) == 0) {
    std::string tail = text.substr(6);
    int r = 0;
    auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), r);
    if (ec == std::errc() && p == tail.data() + tail.size() && r >= 0)
      return LocalMargin{r};
  }
  throw UsageError("bad level '" + text + "' (expected local:<r> or exact-z)");
}

namespace {

bool forbidden_violated(const Group& g, const Pattern& p,
                        const ForbiddenPatternsRule& rule) {
  // A forbidden pattern q applies at g0 iff g0.support(q) lies inside
  // support(p); candidate g0 = site * h^{-1} for each h in support(q).
  for (const auto& q : rule.patterns) {
    const GroupElement& h0 = q.support[0];
    GroupElement h0_inv = g.inv(h0);
    for (const auto& site : p.support) {
      GroupElement g0 = g.mul(site, h0_inv);
      bool match = true;
      for (std::size_t i = 0; i < q.size() && match; ++i) {
        auto val = p.find(g, g.mul(g0, q.support[i]));
        match = val && *val == q.values[i];
      }
      if (match) return true;
    }
  }
  return false;
}

bool linear_violated(const Group& g, const Pattern& p,
                     const LinearGf2Rule& rule) {
  for (const auto& s : rule.supports) {
    const GroupElement& h0 = s[0];
    GroupElement h0_inv = g.inv(h0);
    for (const auto& site : p.support) {
      GroupElement g0 = g.mul(site, h0_inv);
      int parity = 0;
      bool inside = true;
      for (std::size_t i = 0; i < s.size() && inside; ++i) {
        auto val = p.find(g, g.mul(g0, s[i]));
        if (!val)
          inside = false;
        else
          parity ^= static_cast<int>(*val);
      }
      if (inside && parity != 0) return true;
    }
  }
  return false;
}

bool predicate_violated(const Subshift& shift, const Pattern& p,
                        BuiltinPredicate which) {
  const Group& g = shift.group;
  if (which == BuiltinPredicate::sunny_side_up) {
    Symbol one = *shift.alphabet.index_of("1");
    std::size_t count = 0;
    for (Symbol v : p.values)
      if (v == one && ++count > 1) return true;
    return false;
  }
  // perfect_matching: x(g0) = s forces x(g0 s) = s^{-1} whenever g0 s is in
  // the support.
  for (std::size_t i = 0; i < p.size(); ++i) {
    GroupElement step = g.parse_element(shift.alphabet.name(p.values[i]));
    GroupElement partner = g.mul(p.support[i], step);
    auto val = p.find(g, partner);
    if (!val) continue;
    GroupElement back = g.parse_element(shift.alphabet.name(*val));
    if (!(back == g.inv(step))) return true;
  }
  return false;
}

}  // namespace

bool is_locally_admissible(const Subshift& shift, const Pattern& p) {
  for (const auto& site : p.support) shift.group.validate(site);
  if (const auto* fp = std::get_if<ForbiddenPatternsRule>(&shift.rule))
    return !forbidden_violated(shift.group, p, *fp);
  if (const auto* lin = std::get_if<LinearGf2Rule>(&shift.rule))
    return !linear_violated(shift.group, p, *lin);
  return !predicate_violated(shift, p, std::get<PredicateRule>(shift.rule).which);
}

}  // namespace shiftlab

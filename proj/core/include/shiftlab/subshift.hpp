#pragma once

#include <string>
#include <variant>
#include <vector>

#include "shiftlab/pattern.hpp"

namespace shiftlab {

/// SFT rule: no left-translate of a forbidden pattern may occur.
struct ForbiddenPatternsRule {
  std::vector<Pattern> patterns;
};

/// Group-shift rule over GF(2): for every listed support S and every g,
/// sum over s in S of x(g s) = 0.
struct LinearGf2Rule {
  std::vector<FiniteSubset> supports;
};

/// Built-in monotone predicates, for subshifts that are not of finite type.
/// Monotone: a pattern violating the predicate has all extensions violating
/// it, which makes depth-first pruning sound.
enum class BuiltinPredicate {
  /// At most one occurrence of symbol "1".
  sunny_side_up,
  /// Edge-matching rule on a free group: the symbol at g names a generator s,
  /// and whenever g s lies in the support its symbol must be s^{-1}.
  perfect_matching,
};

struct PredicateRule {
  BuiltinPredicate which;
};

using Rule = std::variant<ForbiddenPatternsRule, LinearGf2Rule, PredicateRule>;

const char* predicate_name(BuiltinPredicate p);
BuiltinPredicate parse_predicate(const std::string& name);

/// A subshift specification: group, alphabet and defining rule.
/// Construction validates the cross-field invariants.
struct Subshift {
  Subshift(Group group, Alphabet alphabet, Rule rule, std::string name = "");

  Group group;
  Alphabet alphabet;
  Rule rule;
  std::string name;

  bool is_forbidden_rule() const {
    return std::holds_alternative<ForbiddenPatternsRule>(rule);
  }
  bool is_linear_rule() const {
    return std::holds_alternative<LinearGf2Rule>(rule);
  }
  bool is_predicate_rule() const {
    return std::holds_alternative<PredicateRule>(rule);
  }

  /// Max word-metric diameter of a rule support (0 for predicates); the
  /// default check margin for homoclinic searches.
  int rule_diameter() const;
};

/// Local/global approximation contract for admissibility.
///
/// LocalMargin(r): patterns on F that extend to locally admissible patterns
/// on F.B_r; one-sided containment L_F <= L^{loc,r}_F <= L^{loc,0}_F.
/// ExactZ: exactly the globally admissible patterns, via the forbidden-word
/// automaton; only sound for Z SFTs.
struct LocalMargin {
  int r = 0;
  friend bool operator==(const LocalMargin&, const LocalMargin&) = default;
};
struct ExactZ {
  friend bool operator==(const ExactZ&, const ExactZ&) = default;
};
using Level = std::variant<LocalMargin, ExactZ>;

void validate_level(const Subshift& shift, const Level& level);
std::string format_level(const Level& level);
Level parse_level(const std::string& text);

/// True iff no fully contained translated constraint is violated by p.
/// Constraints whose translated support sticks out of support(p) do not
/// count.
bool is_locally_admissible(const Subshift& shift, const Pattern& p);

}  // namespace shiftlab

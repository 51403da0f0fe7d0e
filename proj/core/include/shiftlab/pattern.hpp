#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/group.hpp"

namespace shiftlab {

using Symbol = std::uint16_t;

/// Finite symbol set.  The gf2 flag marks the alphabet {0,1} with group
/// addition, which enables the linear-rule machinery.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> names, bool gf2 = false);

  static Alphabet binary_gf2() { return Alphabet({"0", "1"}, true); }

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Symbol> index_of(const std::string& name) const;
  bool gf2() const { return gf2_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
  bool gf2_;
};

/// Finite-support assignment of symbols to group elements.  Values are
/// aligned with the canonical order of the support.
struct Pattern {
  FiniteSubset support;
  std::vector<Symbol> values;

  std::size_t size() const { return support.size(); }
  bool empty() const { return support.empty(); }

  Symbol at(const Group& g, const GroupElement& site) const;
  std::optional<Symbol> find(const Group& g, const GroupElement& site) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Builds a pattern from unsorted (site, symbol) pairs.  Throws UsageError
/// on duplicate sites or out-of-range symbols.
Pattern make_pattern(const Group& g, const Alphabet& a,
                     std::vector<std::pair<GroupElement, Symbol>> entries);

/// Serialization order: support size, then sites, then values.  This is the
/// order behind every "canonical-least witness" in the library.
bool pattern_less(const Group& g, const Pattern& a, const Pattern& b);

/// g.p with (g.p)(g h) = p(h); matches the shift convention
/// g x(h) = x(g^{-1} h).
Pattern translate(const Group& g, const GroupElement& by, const Pattern& p);

Pattern restrict_to(const Group& g, const Pattern& p, const FiniteSubset& s);

/// Union of supports; values must agree where supports overlap.  On
/// disagreement returns nullopt and reports the least conflicting site.
std::optional<Pattern> try_glue(const Group& g, const Pattern& p,
                                const Pattern& q, GroupElement* conflict_site);

/// Throwing variant of try_glue.
Pattern glue(const Group& g, const Pattern& p, const Pattern& q);

/// z on the common support W of x and y with z = x on A and z = y on W\A.
/// Requires support(x) = support(y) >= A.
Pattern splice(const Group& g, const Pattern& x, const Pattern& y,
               const FiniteSubset& a);

std::string format_pattern(const Group& g, const Alphabet& a, const Pattern& p);

}  // namespace shiftlab

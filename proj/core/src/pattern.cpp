#include "shiftlab/pattern.hpp"

#include <algorithm>

namespace shiftlab {

Alphabet::Alphabet(std::vector<std::string> names, bool gf2)
    : names_(std::move(names)), gf2_(gf2) {
  if (names_.empty()) throw UsageError("alphabet must be nonempty");
  if (names_.size() > 65536) throw UsageError("alphabet size exceeds 2^16");
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UsageError("alphabet symbol names must be unique");
  for (const auto& n : names_)
    if (n.empty()) throw UsageError("alphabet symbol names must be nonempty");
  if (gf2_ && !(names_.size() == 2 && names_[0] == "0" && names_[1] == "1"))
    throw UsageError("gf2 alphabets must be exactly {0, 1}");
}

std::optional<Symbol> Alphabet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Symbol>(i);
  return std::nullopt;
}

Symbol Pattern::at(const Group& g, const GroupElement& site) const {
  auto idx = support.index_of(g, site);
  if (!idx) throw UsageError("site not in pattern support");
  return values[*idx];
}

std::optional<Symbol> Pattern::find(const Group& g,
                                    const GroupElement& site) const {
  auto idx = support.index_of(g, site);
  if (!idx) return std::nullopt;
  return values[*idx];
}

Pattern make_pattern(const Group& g, const Alphabet& a,
                     std::vector<std::pair<GroupElement, Symbol>> entries) {
  std::vector<GroupElement> sites;
  sites.reserve(entries.size());
  for (auto& [site, sym] : entries) {
    if (sym >= a.size()) throw UsageError("symbol index out of range");
    sites.push_back(site);
  }
  FiniteSubset support = FiniteSubset::of(g, sites);
  if (support.size() != entries.size())
    throw UsageError("pattern has a duplicate site");
  std::vector<Symbol> values(entries.size());
  for (auto& [site, sym] : entries) values[*support.index_of(g, site)] = sym;
  return Pattern{std::move(support), std::move(values)};
}

bool pattern_less(const Group& g, const Pattern& a, const Pattern& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.support[i] != b.support[i])
      return g.less(a.support[i], b.support[i]);
  }
  return a.values < b.values;
}

Pattern translate(const Group& g, const GroupElement& by, const Pattern& p) {
  std::vector<std::pair<GroupElement, Symbol>> entries;
  entries.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    entries.emplace_back(g.mul(by, p.support[i]), p.values[i]);
  // Re-sorting by hand avoids the alphabet dependency of make_pattern.
  std::sort(entries.begin(), entries.end(),
            [&g](const auto& x, const auto& y) { return g.less(x.first, y.first); });
  std::vector<GroupElement> sites;
  std::vector<Symbol> values;
  for (auto& [site, sym] : entries) {
    sites.push_back(site);
    values.push_back(sym);
  }
  return Pattern{FiniteSubset::of(g, std::move(sites)), std::move(values)};
}

Pattern restrict_to(const Group& g, const Pattern& p, const FiniteSubset& s) {
  std::vector<Symbol> values;
  values.reserve(s.size());
  for (const auto& site : s) {
    auto idx = p.support.index_of(g, site);
    if (!idx) throw UsageError("restriction target is not inside the support");
    values.push_back(p.values[*idx]);
  }
  return Pattern{s, std::move(values)};
}

std::optional<Pattern> try_glue(const Group& g, const Pattern& p,
                                const Pattern& q,
                                GroupElement* conflict_site) {
  FiniteSubset support = p.support.union_with(g, q.support);
  std::vector<Symbol> values(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    auto a = p.find(g, support[i]);
    auto b = q.find(g, support[i]);
    if (a && b && *a != *b) {
      if (conflict_site) *conflict_site = support[i];
      return std::nullopt;
    }
    values[i] = a ? *a : *b;
  }
  return Pattern{std::move(support), std::move(values)};
}

Pattern glue(const Group& g, const Pattern& p, const Pattern& q) {
  GroupElement site;
  auto out = try_glue(g, p, q, &site);
  if (!out)
    throw UsageError("glue conflict at site " + g.format_element(site));
  return *std::move(out);
}

Pattern splice(const Group& g, const Pattern& x, const Pattern& y,
               const FiniteSubset& a) {
  if (x.support != y.support)
    throw UsageError("splice requires equal supports");
  if (!a.subset_of(g, x.support))
    throw UsageError("splice set A must lie inside the common support");
  Pattern z = y;
  for (const auto& site : a) z.values[*z.support.index_of(g, site)] = x.at(g, site);
  return z;
}

std::string format_pattern(const Group& g, const Alphabet& a,
                           const Pattern& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += g.format_element(p.support[i]);
    s += "->";
    s += a.name(p.values[i]);
  }
  s += '}';
  return s;
}

}  // namespace shiftlab

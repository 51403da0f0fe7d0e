#include "shiftlab/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <unordered_set>

namespace shiftlab {

namespace {

// Lexicographic rank of a free-group letter under a1 < a1^{-1} < a2 < ...
inline int letter_rank(std::int32_t letter) {
  int idx = std::abs(letter) - 1;
  return 2 * idx + (letter < 0 ? 1 : 0);
}

}  // namespace

Group Group::integer_lattice(int d) {
  if (d < 1) throw UsageError("integer lattice dimension must be >= 1");
  return Group(Kind::integer_lattice, d);
}

Group Group::free_group(int k) {
  if (k < 1) throw UsageError("free group rank must be >= 1");
  return Group(Kind::free_group, k);
}

GroupElement Group::identity() const {
  if (is_lattice()) return GroupElement{std::vector<std::int32_t>(rank_, 0)};
  return GroupElement{};
}

bool Group::is_identity(const GroupElement& a) const {
  validate(a);
  if (is_lattice())
    return std::all_of(a.v.begin(), a.v.end(), [](auto x) { return x == 0; });
  return a.v.empty();
}

void Group::validate(const GroupElement& a) const {
  if (is_lattice()) {
    if (static_cast<int>(a.v.size()) != rank_)
      throw UsageError("element does not belong to " + name());
    return;
  }
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    std::int32_t x = a.v[i];
    if (x == 0 || std::abs(x) > rank_)
      throw UsageError("element does not belong to " + name());
    if (i > 0 && a.v[i - 1] == -x)
      throw UsageError("free-group element is not freely reduced");
  }
}

std::vector<GroupElement> Group::generators() const {
  std::vector<GroupElement> out;
  if (is_lattice()) {
    for (int i = 0; i < rank_; ++i) {
      for (int s : {+1, -1}) {
        GroupElement e{std::vector<std::int32_t>(rank_, 0)};
        e.v[i] = s;
        out.push_back(std::move(e));
      }
    }
    std::sort(out.begin(), out.end(),
              [this](const auto& a, const auto& b) { return less(a, b); });
  } else {
    for (int i = 1; i <= rank_; ++i) {
      out.push_back(GroupElement{{i}});
      out.push_back(GroupElement{{-i}});
    }
  }
  return out;
}

GroupElement Group::mul(const GroupElement& a, const GroupElement& b) const {
  validate(a);
  validate(b);
  if (is_lattice()) {
    GroupElement out = a;
    for (int i = 0; i < rank_; ++i) out.v[i] += b.v[i];
    return out;
  }
  GroupElement out = a;
  for (std::int32_t x : b.v) {
    if (!out.v.empty() && out.v.back() == -x)
      out.v.pop_back();
    else
      out.v.push_back(x);
  }
  return out;
}

GroupElement Group::inv(const GroupElement& a) const {
  validate(a);
  if (is_lattice()) {
    GroupElement out = a;
    for (auto& x : out.v) x = -x;
    return out;
  }
  GroupElement out;
  out.v.reserve(a.v.size());
  for (auto it = a.v.rbegin(); it != a.v.rend(); ++it) out.v.push_back(-*it);
  return out;
}

int Group::word_length(const GroupElement& a) const {
  validate(a);
  if (is_lattice()) {
    long n = 0;
    for (auto x : a.v) n += std::abs(x);
    return static_cast<int>(n);
  }
  return static_cast<int>(a.v.size());
}

int Group::distance(const GroupElement& a, const GroupElement& b) const {
  return word_length(mul(inv(a), b));
}

bool Group::less(const GroupElement& a, const GroupElement& b) const {
  int la = word_length(a), lb = word_length(b);
  if (la != lb) return la < lb;
  if (is_lattice()) return a.v < b.v;
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    int ra = letter_rank(a.v[i]), rb = letter_rank(b.v[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

FiniteSubset Group::ball(int n, std::size_t cap) const {
  if (n < 0) throw UsageError("ball radius must be >= 0");
  std::vector<GroupElement> out;
  if (is_lattice()) {
    // Enumerate |x|_1 <= n coordinate by coordinate.
    GroupElement cur{std::vector<std::int32_t>(rank_, 0)};
    std::function<void(int, int)> rec = [&](int i, int budget) {
      if (i == rank_) {
        if (out.size() >= cap)
          throw ResourceError("ball size exceeds cap of " +
                              std::to_string(cap));
        out.push_back(cur);
        return;
      }
      for (int x = -budget; x <= budget; ++x) {
        cur.v[i] = x;
        rec(i + 1, budget - std::abs(x));
      }
      cur.v[i] = 0;
    };
    rec(0, n);
  } else {
    // BFS over freely reduced words.
    out.push_back(identity());
    std::size_t layer_begin = 0;
    for (int len = 1; len <= n; ++len) {
      std::size_t layer_end = out.size();
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        for (int g = 1; g <= rank_; ++g) {
          for (int s : {g, -g}) {
            if (!out[i].v.empty() && out[i].v.back() == -s) continue;
            if (out.size() >= cap)
              throw ResourceError("ball size exceeds cap of " +
                                  std::to_string(cap));
            GroupElement w = out[i];
            w.v.push_back(s);
            out.push_back(std::move(w));
          }
        }
      }
      layer_begin = layer_end;
    }
  }
  return FiniteSubset::of(*this, std::move(out));
}

FiniteSubset Group::folner_window(int n, std::size_t cap) const {
  if (is_free())
    throw NonAmenableGroupError(
        "free groups admit no Folner sequence; use ball windows and "
        "naive-entropy paths instead");
  if (n < 0) throw UsageError("Folner window side must be >= 0");
  double total = 1;
  for (int i = 0; i < rank_; ++i) total *= n;
  if (total > static_cast<double>(cap))
    throw ResourceError("Folner window size exceeds cap of " +
                        std::to_string(cap));
  std::vector<GroupElement> out;
  GroupElement cur{std::vector<std::int32_t>(rank_, 0)};
  std::function<void(int)> rec = [&](int i) {
    if (i == rank_) {
      out.push_back(cur);
      return;
    }
    for (int x = 0; x < n; ++x) {
      cur.v[i] = x;
      rec(i + 1);
    }
    cur.v[i] = 0;
  };
  if (n > 0) rec(0);
  return FiniteSubset::of(*this, std::move(out));
}

int Group::gromov_product_x2(const GroupElement& s, const GroupElement& t,
                             const GroupElement& g) const {
  if (!is_free())
    throw UsageError("Gromov product is defined for free groups only");
  return distance(s, g) + distance(t, g) - distance(s, t);
}

FiniteSubset Group::span(const FiniteSubset& f) const {
  if (!is_free()) throw UsageError("span is defined for free groups only");
  if (f.empty()) throw UsageError("span of an empty set");
  // (s,t)_g = 0 exactly when g lies on the geodesic [s,t]; walk each one.
  std::unordered_set<GroupElement, GroupElementHash> seen;
  std::vector<GroupElement> out;
  auto add = [&](const GroupElement& e) {
    if (seen.insert(e).second) out.push_back(e);
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i; j < f.size(); ++j) {
      GroupElement w = mul(inv(f[i]), f[j]);
      GroupElement cur = f[i];
      add(cur);
      for (std::int32_t x : w.v) {
        cur = mul(cur, GroupElement{{x}});
        add(cur);
      }
    }
  }
  return FiniteSubset::of(*this, std::move(out));
}

bool Group::is_connected(const FiniteSubset& f) const { return f == span(f); }

FiniteSubset Group::separated_subset(const FiniteSubset& f, int k) const {
  if (k < 1) throw UsageError("separation distance must be >= 1");
  std::vector<GroupElement> kept;
  for (const auto& e : f) {
    bool ok = true;
    for (const auto& c : kept) {
      if (distance(c, e) < k) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(e);
  }
  return FiniteSubset::of(*this, std::move(kept));
}

bool Group::is_pairwise_separated(const std::vector<FiniteSubset>& sets,
                                  int k) const {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      for (const auto& a : sets[i])
        for (const auto& b : sets[j])
          if (distance(a, b) < k) return false;
    }
  }
  return true;
}

GroupElement Group::parse_element(const std::string& text) const {
  auto fail = [&]() -> GroupElement {
    throw UsageError("cannot parse group element '" + text + "' for " +
                     name());
  };
  if (text.empty()) return fail();
  if (is_lattice()) {
    std::vector<std::int32_t> coords;
    std::string body = text;
    if (text.front() == '[') {
      if (text.back() != ']') return fail();
      body = text.substr(1, text.size() - 2);
    }
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string tok = body.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      // trim
      while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front())))
        tok.erase(tok.begin());
      while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
        tok.pop_back();
      if (tok.empty()) return fail();
      int value = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || p != tok.data() + tok.size()) return fail();
      coords.push_back(value);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    GroupElement e{std::move(coords)};
    if (static_cast<int>(e.v.size()) != rank_) return fail();
    return e;
  }
  if (text == "e") return identity();
  GroupElement out;
  for (char c : text) {
    std::int32_t letter;
    if (c >= 'a' && c <= 'z')
      letter = c - 'a' + 1;
    else if (c >= 'A' && c <= 'Z')
      letter = -(c - 'A' + 1);
    else
      return fail();
    if (std::abs(letter) > rank_) return fail();
    if (!out.v.empty() && out.v.back() == -letter)
      out.v.pop_back();
    else
      out.v.push_back(letter);
  }
  return out;
}

std::string Group::format_element(const GroupElement& a) const {
  validate(a);
  if (is_lattice()) {
    std::string s = "[";
    for (int i = 0; i < rank_; ++i) {
      if (i) s += ',';
      s += std::to_string(a.v[i]);
    }
    s += ']';
    return s;
  }
  if (a.v.empty()) return "e";
  if (rank_ > 26)
    throw UsageError("letter serialization supports free rank <= 26");
  std::string s;
  for (std::int32_t x : a.v)
    s += static_cast<char>(x > 0 ? 'a' + x - 1 : 'A' - x - 1);
  return s;
}

std::string Group::name() const {
  if (is_lattice()) return rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_);
  return "F_" + std::to_string(rank_);
}

Group Group::parse_name(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    int value = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || p != s.data() + s.size() || value < 1)
      throw UsageError("bad group name '" + text + "'");
    return value;
  };
  if (text == "Z") return integer_lattice(1);
  if (text.rfind("Z^", 0) == 0) return integer_lattice(parse_int(text.substr(2)));
  if (text.rfind("F_", 0) == 0) return free_group(parse_int(text.substr(2)));
  throw UsageError("bad group name '" + text + "' (expected Z, Z^d or F_k)");
}

FiniteSubset FiniteSubset::of(const Group& g, std::vector<GroupElement> elems) {
  for (const auto& e : elems) g.validate(e);
  std::sort(elems.begin(), elems.end(),
            [&g](const auto& a, const auto& b) { return g.less(a, b); });
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  FiniteSubset out;
  out.elems_ = std::move(elems);
  return out;
}

bool FiniteSubset::contains(const Group& g, const GroupElement& e) const {
  return index_of(g, e).has_value();
}

std::optional<std::size_t> FiniteSubset::index_of(const Group& g,
                                                  const GroupElement& e) const {
  auto it = std::lower_bound(
      elems_.begin(), elems_.end(), e,
      [&g](const auto& a, const auto& b) { return g.less(a, b); });
  if (it != elems_.end() && *it == e)
    return static_cast<std::size_t>(it - elems_.begin());
  return std::nullopt;
}

bool FiniteSubset::subset_of(const Group& g, const FiniteSubset& other) const {
  for (const auto& e : elems_)
    if (!other.contains(g, e)) return false;
  return true;
}

FiniteSubset FiniteSubset::translated(const Group& g,
                                      const GroupElement& by) const {
  std::vector<GroupElement> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(g.mul(by, e));
  return of(g, std::move(out));
}

FiniteSubset FiniteSubset::product(const Group& g,
                                   const FiniteSubset& other) const {
  std::vector<GroupElement> out;
  out.reserve(elems_.size() * other.size());
  for (const auto& a : elems_)
    for (const auto& b : other) out.push_back(g.mul(a, b));
  return of(g, std::move(out));
}

FiniteSubset FiniteSubset::union_with(const Group& g,
                                      const FiniteSubset& other) const {
  std::vector<GroupElement> out = elems_;
  out.insert(out.end(), other.elems_.begin(), other.elems_.end());
  return of(g, std::move(out));
}

FiniteSubset FiniteSubset::minus(const Group& g,
                                 const FiniteSubset& other) const {
  std::vector<GroupElement> out;
  for (const auto& e : elems_)
    if (!other.contains(g, e)) out.push_back(e);
  return of(g, std::move(out));
}

}  // namespace shiftlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/errors.hpp"

namespace shiftlab {

/// Element of Z^d or of a free group F_k.
///
/// Z^d elements store the coordinate vector (length d).  F_k elements store
/// the freely reduced word, one letter per entry: +i is the i-th generator
/// (1-based), -i its inverse.  Equal elements compare equal bitwise; the
/// owning Group enforces canonicity.
struct GroupElement {
  std::vector<std::int32_t> v;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ e.v.size();
    for (std::int32_t x : e.v) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x)) +
           0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

class FiniteSubset;

/// A finitely generated group: the integer lattice Z^d or the free group F_k,
/// with the word metric of the standard symmetric generating set.
///
/// All operations validate that their operands belong to this group and throw
/// UsageError otherwise.  Values are immutable and safe to share across
/// threads.
class Group {
 public:
  enum class Kind { integer_lattice, free_group };

  static Group integer_lattice(int d);
  static Group free_group(int k);

  Kind kind() const { return kind_; }
  /// Lattice dimension d, or free rank k.
  int rank() const { return rank_; }
  bool is_lattice() const { return kind_ == Kind::integer_lattice; }
  bool is_free() const { return kind_ == Kind::free_group; }

  GroupElement identity() const;
  bool is_identity(const GroupElement& a) const;

  /// The symmetric generating set S = S^{-1}, e not in S, in canonical order.
  std::vector<GroupElement> generators() const;

  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;

  int word_length(const GroupElement& a) const;
  /// Left-invariant word metric: |a^{-1} b|.
  int distance(const GroupElement& a, const GroupElement& b) const;

  /// Canonical total order: shorter words first, then lexicographic
  /// (generator order a1 < a1^{-1} < a2 < ... for F_k, coordinate-lex for
  /// Z^d).  Witness searches return least elements under this order.
  bool less(const GroupElement& a, const GroupElement& b) const;

  static constexpr std::size_t kDefaultBallCap = 1'000'000;

  /// All elements of word length <= n, canonically ordered.
  FiniteSubset ball(int n, std::size_t cap = kDefaultBallCap) const;

  /// The box [0,n)^d, a Folner sequence for Z^d.  Throws
  /// NonAmenableGroupError for free groups, which admit no Folner sequence.
  FiniteSubset folner_window(int n, std::size_t cap = kDefaultBallCap) const;

  /// Twice the Gromov product (s,t)_g = (d(s,g)+d(t,g)-d(s,t))/2.
  /// Exact integer arithmetic; free groups only.
  int gromov_product_x2(const GroupElement& s, const GroupElement& t,
                        const GroupElement& g) const;

  /// Geodesic hull in the Cayley tree: all g with (s,t)_g = 0 for some
  /// s,t in F.  Free groups only.
  FiniteSubset span(const FiniteSubset& f) const;
  bool is_connected(const FiniteSubset& f) const;

  /// Greedy (canonical-order) maximal k-separated subset of F: pairwise
  /// distance >= k, and every element of F is within k-1 of the result.
  FiniteSubset separated_subset(const FiniteSubset& f, int k) const;
  bool is_pairwise_separated(const std::vector<FiniteSubset>& sets,
                             int k) const;

  /// Parses "[1,-2]" (Z^d), a bare integer (Z), or a reduced word "abA"
  /// with capitals for inverses ("e" is the identity).  Free-group input is
  /// reduced if needed.
  GroupElement parse_element(const std::string& text) const;
  std::string format_element(const GroupElement& a) const;

  /// Group name as written in spec files: "Z", "Z^2", "F_2", ...
  std::string name() const;
  static Group parse_name(const std::string& text);

  void validate(const GroupElement& a) const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  Group(Kind kind, int rank) : kind_(kind), rank_(rank) {}

  Kind kind_;
  int rank_;
};

/// Ordered, duplicate-free set of group elements, kept in canonical order.
class FiniteSubset {
 public:
  FiniteSubset() = default;

  /// Sorts canonically and rejects duplicates and foreign elements.
  static FiniteSubset of(const Group& g, std::vector<GroupElement> elems);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const GroupElement& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<GroupElement>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(const Group& g, const GroupElement& e) const;
  std::optional<std::size_t> index_of(const Group& g,
                                      const GroupElement& e) const;
  bool subset_of(const Group& g, const FiniteSubset& other) const;

  /// {g a : a in this}.
  FiniteSubset translated(const Group& g, const GroupElement& by) const;
  /// {a b : a in this, b in other}, deduplicated.
  FiniteSubset product(const Group& g, const FiniteSubset& other) const;
  FiniteSubset union_with(const Group& g, const FiniteSubset& other) const;
  /// Elements of this not in other.
  FiniteSubset minus(const Group& g, const FiniteSubset& other) const;

  friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;

 private:
  std::vector<GroupElement> elems_;
};

}  // namespace shiftlab

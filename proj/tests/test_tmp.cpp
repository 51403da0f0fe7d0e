#include <doctest.h>

#include "helpers.hpp"
#include "shiftlab/tmp.hpp"

using namespace shiftlab;
using namespace shiftlab::testing;

namespace {

Subshift golden_mean() {
  Group z = Group::integer_lattice(1);
  return hard_square(z, FiniteSubset::of(z, {GroupElement{{1}}}));
}

FiniteSubset z_set(const Group& z, std::vector<int> xs) {
  std::vector<GroupElement> elems;
  for (int x : xs) elems.push_back(GroupElement{{x}});
  return FiniteSubset::of(z, std::move(elems));
}

}  // namespace

TEST_CASE("full shifts splice freely") {
  Group z = Group::integer_lattice(1);
  Subshift full = full_shift(z, 2);
  Verdict v = check_memory_set(full, z_set(z, {0}), z_set(z, {-1, 0, 1}),
                               z_set(z, {-2, -1, 0, 1, 2}), ExactZ{});
  CHECK(v.holds());
}

TEST_CASE("sunny-side-up yields a counterexample at every scale") {
  Group z = Group::integer_lattice(1);
  Subshift sunny = sunny_side_up(z);
  FiniteSubset a = z_set(z, {0});
  for (int n = 1; n <= 6; ++n) {
    FiniteSubset b = z.folner_window(n);          // {0..n-1} contains A
    FiniteSubset w = z.folner_window(n + 2);
    Verdict v = check_memory_set(sunny, a, b, w, LocalMargin{0});
    const auto* ce = v.counterexample();
    REQUIRE(ce != nullptr);
    // the splice is inadmissible while both sides are admissible
    CHECK(is_locally_admissible(sunny, ce->x));
    CHECK(is_locally_admissible(sunny, ce->y));
    CHECK_FALSE(is_locally_admissible(sunny, ce->spliced));
    // the least counterexample puts the 1 of x at the origin
    CHECK(ce->x.at(z, GroupElement{{0}}) == 1);
  }
}

TEST_CASE("golden mean splices along its memory margin") {
  Group z = Group::integer_lattice(1);
  Subshift golden = golden_mean();
  Verdict v = check_memory_set(golden, z_set(z, {0, 1, 2, 3}),
                               z_set(z, {-1, 0, 1, 2, 3, 4}),
                               z_set(z, {-3, -2, -1, 0, 1, 2, 3, 4, 5, 6}),
                               ExactZ{});
  CHECK(v.holds());
}

TEST_CASE("strong TMP scan: SFTs hold, sunny-side-up fails at the identity") {
  Group z = Group::integer_lattice(1);
  Subshift golden = golden_mean();
  ScanReport scan = strong_tmp_scan(golden, z.ball(1),
                                    {z_set(z, {0}), z_set(z, {0, 1})}, 1,
                                    ExactZ{});
  CHECK(scan.all_hold());

  Subshift sunny = sunny_side_up(z);
  ScanReport sunny_scan =
      strong_tmp_scan(sunny, z.ball(1), {z_set(z, {0})}, 2, LocalMargin{0});
  REQUIRE(sunny_scan.rows.size() == 1);
  CHECK(sunny_scan.rows[0].verdict.counterexample() != nullptr);
}

TEST_CASE("five-dot scan holds via the subspace check") {
  Subshift cross = five_dot_cross();
  const Group& f2 = cross.group;
  ScanReport scan = strong_tmp_scan(cross, f2.ball(2),
                                    {f2.ball(1), f2.ball(2)}, 1,
                                    LocalMargin{1});
  CHECK(scan.all_hold());
}

TEST_CASE("margin sides differ for non-abelian scans") {
  // With left-translated constraints and the left-invariant metric, A.F is
  // the metric neighborhood of A; F.A need not even contain A's neighbors,
  // so only the default side is expected to splice at rule-diameter margins.
  Subshift cross = five_dot_cross();
  const Group& f2 = cross.group;
  FiniteSubset a = FiniteSubset::of(f2, {f2.parse_element("ab")});
  FiniteSubset f = f2.ball(2);
  CHECK_FALSE(a.product(f2, f) == f.product(f2, a));

  ScanReport af = strong_tmp_scan(cross, f, {a}, 1, LocalMargin{0}, {},
                                  MarginSide::a_times_f);
  CHECK(af.all_hold());

  ScanReport fa = strong_tmp_scan(cross, f, {a}, 1, LocalMargin{0}, {},
                                  MarginSide::f_times_a);
  REQUIRE(fa.rows.size() == 1);
  const auto* ce = fa.rows[0].verdict.counterexample();
  REQUIRE(ce != nullptr);  // F.A misses neighbors of A here
  CHECK(member_at_level(cross, ce->x, LocalMargin{0}).member);
  CHECK(member_at_level(cross, ce->y, LocalMargin{0}).member);
  CHECK_FALSE(member_at_level(cross, ce->spliced, LocalMargin{0}).member);
}

TEST_CASE("hard-square interchangeable pair: the background flip") {
  Group z = Group::integer_lattice(1);
  Subshift golden = golden_mean();
  FiniteSubset a = z_set(z, {0});
  FiniteSubset w = z_set(z, {-2, -1, 0, 1, 2});
  PairSearchOutcome out = find_interchangeable_pair(golden, a, w, ExactZ{});
  REQUIRE(out.witness.has_value());
  CHECK(out.witness->p.values == std::vector<Symbol>{0});
  CHECK(out.witness->q.values == std::vector<Symbol>{1});
  for (Symbol v : out.witness->context.values) CHECK(v == 0);

  Subshift hs_f2 = zoo_find(zoo_entries(), "hard-square-f2").shift;
  const Group& f2 = hs_f2.group;
  PairSearchOutcome out2 = find_interchangeable_pair(
      hs_f2, FiniteSubset::of(f2, {f2.identity()}), f2.ball(1),
      LocalMargin{0});
  CHECK(out2.witness.has_value());
}

TEST_CASE("perfect matchings admit no interchangeable pair") {
  Subshift pm = perfect_matchings();
  const Group& f2 = pm.group;
  for (int w : {2, 3}) {
    PairSearchOutcome out = find_interchangeable_pair(
        pm, f2.ball(1), f2.ball(w), LocalMargin{0});
    CHECK(out.complete);
    CHECK_FALSE(out.witness.has_value());
  }
}

TEST_CASE("five-dot admits no interchangeable pair up to ball 3") {
  Subshift cross = five_dot_cross();
  const Group& f2 = cross.group;
  for (int level_r : {0, 1}) {
    PairSearchOutcome out = find_interchangeable_pair(
        cross, f2.ball(1), f2.ball(3), LocalMargin{level_r});
    CHECK(out.complete);
    CHECK_FALSE(out.witness.has_value());
  }
}

TEST_CASE("full shift pair witnesses exist everywhere") {
  Group z = Group::integer_lattice(1);
  Subshift full = full_shift(z, 2);
  PairSearchOutcome out = find_interchangeable_pair(
      full, z_set(z, {0}), z_set(z, {-1, 0, 1}), LocalMargin{0});
  REQUIRE(out.witness.has_value());
  CHECK(out.witness->p.values != out.witness->q.values);
}

TEST_CASE("homoclinic searches") {
  Group z = Group::integer_lattice(1);
  Subshift golden = golden_mean();
  HomoclinicOutcome hs = homoclinic_search(golden, 0, 0);
  REQUIRE(hs.witness.has_value());
  CHECK(hs.witness->values == std::vector<Symbol>{1});

  Subshift led = ledrappier();
  for (int n : {1, 3, 6}) {
    HomoclinicOutcome none = homoclinic_search(led, 0, n);
    CHECK(none.complete);
    CHECK_FALSE(none.witness.has_value());
  }

  Subshift cross = five_dot_cross();
  for (int n : {1, 2, 3}) {
    HomoclinicOutcome none = homoclinic_search(cross, 0, n);
    CHECK(none.complete);
    CHECK_FALSE(none.witness.has_value());
  }

  Subshift sunny = sunny_side_up(z);
  HomoclinicOutcome s = homoclinic_search(sunny, 0, 1);
  REQUIRE(s.witness.has_value());
  int ones = 0;
  for (Symbol v : s.witness->values) ones += (v == 1);
  CHECK(ones == 1);

  // all-1 background is inadmissible for the golden mean
  CHECK_THROWS_AS(homoclinic_search(golden, 1, 1), UsageError);
}

TEST_CASE("homoclinic kernel path agrees with plain search on small systems") {
  // The three-dot kernel path and a DFS through an equivalent
  // forbidden-pattern formulation must agree.
  Group z2 = Group::integer_lattice(2);
  Alphabet ab({"0", "1"}, true);
  ForbiddenPatternsRule odd_rule;
  // forbid the four odd-parity assignments of the three-dot support
  for (int mask = 0; mask < 8; ++mask) {
    if ((__builtin_popcount(mask) & 1) == 0) continue;
    odd_rule.patterns.push_back(
        make_pattern(z2, ab,
                     {{GroupElement{{0, 0}}, static_cast<Symbol>(mask & 1)},
                      {GroupElement{{1, 0}}, static_cast<Symbol>((mask >> 1) & 1)},
                      {GroupElement{{0, 1}}, static_cast<Symbol>((mask >> 2) & 1)}}));
  }
  Subshift led_sft(z2, ab, std::move(odd_rule), "ledrappier-sft");
  Subshift led = ledrappier();
  for (int n : {0, 1, 2}) {
    HomoclinicOutcome a = homoclinic_search(led, 0, n, 2);
    HomoclinicOutcome b = homoclinic_search(led_sft, 0, n, 2);
    CHECK(a.witness.has_value() == b.witness.has_value());
  }
}

TEST_CASE("verdicts and witnesses are deterministic across threads") {
  Group z = Group::integer_lattice(1);
  Subshift golden = golden_mean();
  BudgetConfig one, eight;
  one.threads = 1;
  eight.threads = 8;
  FiniteSubset a = z_set(z, {0});
  FiniteSubset w = z_set(z, {-2, -1, 0, 1, 2});
  auto p1 = find_interchangeable_pair(golden, a, w, ExactZ{}, one);
  auto p8 = find_interchangeable_pair(golden, a, w, ExactZ{}, eight);
  REQUIRE(p1.witness.has_value());
  REQUIRE(p8.witness.has_value());
  CHECK(p1.witness->p == p8.witness->p);
  CHECK(p1.witness->q == p8.witness->q);
  CHECK(p1.witness->context == p8.witness->context);

  Subshift pm = perfect_matchings();
  auto n1 = find_interchangeable_pair(pm, pm.group.ball(1), pm.group.ball(2),
                                      LocalMargin{0}, one);
  auto n8 = find_interchangeable_pair(pm, pm.group.ball(1), pm.group.ball(2),
                                      LocalMargin{0}, eight);
  CHECK(n1.witness.has_value() == n8.witness.has_value());
  CHECK(n1.complete == n8.complete);
}

TEST_CASE("positive-entropy Z SFT with all-holds scan has a pair witness") {
  // concrete instance of the entropy-to-asymptotic direction at desk scale
  Group z = Group::integer_lattice(1);
  Subshift golden = golden_mean();
  ScanReport scan =
      strong_tmp_scan(golden, z.ball(1), {z_set(z, {0})}, 2, ExactZ{});
  CHECK(scan.all_hold());
  PairSearchOutcome pair = find_interchangeable_pair(
      golden, z_set(z, {0}), z_set(z, {-2, -1, 0, 1, 2}), ExactZ{});
  CHECK(pair.witness.has_value());
}

TEST_CASE("chain preconditions are enforced") {
  Group z = Group::integer_lattice(1);
  Subshift golden = golden_mean();
  CHECK_THROWS_AS(check_memory_set(golden, z_set(z, {0, 5}), z_set(z, {0}),
                                   z_set(z, {0}), ExactZ{}),
                  UsageError);
  CHECK_THROWS_AS(find_interchangeable_pair(golden, z_set(z, {7}),
                                            z_set(z, {0, 1}), ExactZ{}),
                  UsageError);
}

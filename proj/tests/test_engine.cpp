#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "shiftlab/engine.hpp"

using namespace shiftlab;
using namespace shiftlab::testing;

TEST_CASE("full shift counts are powers of the alphabet size") {
  for (int k : {2, 3}) {
    Subshift full = full_shift(Group::integer_lattice(1), k);
    for (int n : {1, 4, 9}) {
      FiniteSubset f = full.group.folner_window(n);
      CountOutcome c = count_admissible(full, f, LocalMargin{0});
      BigInt expected = 1;
      for (int i = 0; i < n; ++i) expected *= k;
      CHECK(c.count == expected);
      CHECK(c.complete);
    }
  }
}

TEST_CASE("golden mean counts follow the Fibonacci pattern") {
  Group z = Group::integer_lattice(1);
  Subshift golden = hard_square(z, FiniteSubset::of(z, {GroupElement{{1}}}));
  std::vector<int> expected{2, 3, 5, 8};
  for (int n = 1; n <= 4; ++n) {
    CountOutcome c =
        count_admissible(golden, golden.group.folner_window(n), ExactZ{});
    CHECK(c.count == expected[n - 1]);
    // brute-force oracle over all binary words
    auto words = brute_z_words({"11"}, n);
    CHECK(c.count == BigInt(words.size()));
  }
}

TEST_CASE("five-dot count on the unit ball is the GF(2) kernel size") {
  Subshift cross = five_dot_cross();
  FiniteSubset b1 = cross.group.ball(1);
  CountOutcome fast = count_admissible(cross, b1, LocalMargin{0});
  CHECK(fast.count == 16);
  // DFS path cross-checks the rank path
  CountOutcome slow = detail::count_admissible_dfs(cross, b1, 0, {});
  CHECK(slow.count == 16);
  // and the assignment-exhausting oracle agrees
  CHECK(brute_local_patterns(cross, b1, 0).size() == 16);
}

TEST_CASE("linear rank path equals DFS on margins and bigger windows") {
  Subshift cross = five_dot_cross();
  FiniteSubset b1 = cross.group.ball(1);
  for (int r : {0, 1}) {
    CountOutcome fast = count_admissible(cross, b1, LocalMargin{r});
    CountOutcome slow = detail::count_admissible_dfs(cross, b1, r, {});
    CHECK(fast.count == slow.count);
    CHECK(fast.count == BigInt(brute_local_patterns(cross, b1, r).size()));
  }
  Subshift led = ledrappier();
  for (int n : {1, 2, 3}) {
    FiniteSubset box = led.group.folner_window(n);
    CountOutcome fast = count_admissible(led, box, LocalMargin{0});
    CHECK(fast.count == BigInt(1) << (2 * n - 1));
    CHECK(fast.count == BigInt(brute_local_patterns(led, box, 0).size()));
  }
}

TEST_CASE("perfect matchings on the unit ball: 108 patterns") {
  Subshift pm = perfect_matchings();
  FiniteSubset b1 = pm.group.ball(1);
  CountOutcome c = count_admissible(pm, b1, LocalMargin{0});
  CHECK(c.count == 108);
  CHECK(brute_local_patterns(pm, b1, 0).size() == 108);
}

TEST_CASE("counts are monotone in the margin") {
  std::mt19937 rng(31);
  Group z = Group::integer_lattice(1);
  for (int trial = 0; trial < 20; ++trial) {
    Subshift sft = random_z_sft(rng);
    FiniteSubset f = z_interval(z, 0, 5);
    BigInt prev = -1;
    for (int r = 0; r <= 3; ++r) {
      CountOutcome c = count_admissible(sft, f, LocalMargin{r});
      REQUIRE(c.complete);
      if (prev >= 0) CHECK(c.count <= prev);
      prev = c.count;
    }
  }
}

TEST_CASE("exact counts agree with stabilized local counts on Z SFTs") {
  Group z = Group::integer_lattice(1);
  Subshift golden = hard_square(z, FiniteSubset::of(z, {GroupElement{{1}}}));
  Subshift full2 = full_shift(z, 2);
  for (const Subshift* shift : {&golden, &full2}) {
    for (int len : {4, 8, 12}) {
      FiniteSubset f = z.folner_window(len);
      CountOutcome exact = count_admissible(*shift, f, ExactZ{});
      CountOutcome local = count_admissible(*shift, f, LocalMargin{1});
      CHECK(exact.count == local.count);
    }
  }
}

TEST_CASE("exact counts can be strictly below local counts") {
  // after a 1 nothing can follow: the subshift is the fixed point 000...
  Group z = Group::integer_lattice(1);
  Alphabet ab({"0", "1"}, true);
  ForbiddenPatternsRule rule;
  rule.patterns.push_back(make_pattern(z, ab, {{GroupElement{{0}}, 1},
                                               {GroupElement{{1}}, 1}}));
  rule.patterns.push_back(make_pattern(z, ab, {{GroupElement{{0}}, 1},
                                               {GroupElement{{1}}, 0}}));
  Subshift dead(z, ab, std::move(rule), "dead-one");
  FiniteSubset f = z.folner_window(3);
  CHECK(count_admissible(dead, f, ExactZ{}).count == 1);
  CHECK(count_admissible(dead, f, LocalMargin{0}).count == 2);
  // every exact pattern appears in every local enumeration
  auto exact = enumerate_admissible(dead, f, ExactZ{});
  auto local = enumerate_admissible(dead, f, LocalMargin{0});
  for (const auto& p : exact.patterns) {
    bool found = false;
    for (const auto& q : local.patterns) found |= (p == q);
    CHECK(found);
  }
}

TEST_CASE("enumerate agrees with count, duplicate-free and ordered") {
  std::mt19937 rng(37);
  Group z = Group::integer_lattice(1);
  for (int trial = 0; trial < 20; ++trial) {
    Subshift sft = random_z_sft(rng);
    FiniteSubset f = z_interval(z, -1, 4);
    for (int r : {0, 2}) {
      auto en = enumerate_admissible(sft, f, LocalMargin{r});
      auto ct = count_admissible(sft, f, LocalMargin{r});
      REQUIRE(en.complete);
      CHECK(BigInt(en.patterns.size()) == ct.count);
      for (std::size_t i = 0; i + 1 < en.patterns.size(); ++i)
        CHECK(pattern_less(z, en.patterns[i], en.patterns[i + 1]));
    }
  }
}

TEST_CASE("DFS with propagation equals the brute-force filter") {
  std::mt19937 rng(41);
  Group z = Group::integer_lattice(1);
  for (int trial = 0; trial < 25; ++trial) {
    Subshift sft = random_z_sft(rng);
    FiniteSubset f = z_interval(z, 0, 7);
    for (int r : {0, 1}) {
      CountOutcome c = count_admissible(sft, f, LocalMargin{r});
      CHECK(c.count == BigInt(brute_local_patterns(sft, f, r).size()));
    }
  }
}

TEST_CASE("extension witnesses are least and sound") {
  Group z = Group::integer_lattice(1);
  Subshift golden = hard_square(z, FiniteSubset::of(z, {GroupElement{{1}}}));
  FiniteSubset f = z_interval(z, 0, 3);
  Pattern p = make_pattern(z, golden.alphabet, {{GroupElement{{1}}, 1}});
  ExtendOutcome e = extend_witness(golden, p, f, ExactZ{});
  REQUIRE(e.witness.has_value());
  CHECK(e.witness->support == f);
  // least completion: zeros everywhere they are allowed
  CHECK(e.witness->values == std::vector<Symbol>{0, 1, 0, 0});
  CHECK(e.witness->at(z, GroupElement{{1}}) == 1);

  // a pattern admissible on its own support extends to itself
  ExtendOutcome self = extend_witness(golden, p, p.support, ExactZ{});
  REQUIRE(self.witness.has_value());
  CHECK(*self.witness == p);

  // sunny-side-up: two 1s never extend anywhere
  Subshift sunny = sunny_side_up(z);
  Pattern twos = make_pattern(z, sunny.alphabet,
                              {{GroupElement{{0}}, 1}, {GroupElement{{5}}, 1}});
  FiniteSubset target = z_interval(z, 0, 5);
  CHECK_FALSE(extend_witness(sunny, twos, target, LocalMargin{0})
                  .witness.has_value());
  CHECK_FALSE(member_at_level(sunny, twos, LocalMargin{2}).member);
}

TEST_CASE("five-dot patterns on connected supports extend site by site") {
  Subshift cross = five_dot_cross();
  const Group& f2 = cross.group;
  FiniteSubset a = f2.span(FiniteSubset::of(
      f2, {f2.identity(), f2.parse_element("a"), f2.parse_element("ab")}));
  FiniteSubset b = a.union_with(f2, FiniteSubset::of(
                                        f2, {f2.parse_element("aa")}));
  auto all = enumerate_admissible(cross, a, LocalMargin{0});
  REQUIRE(all.complete);
  for (const auto& p : all.patterns) {
    ExtendOutcome e = extend_witness(cross, p, b, LocalMargin{0});
    CHECK(e.witness.has_value());
  }
}

TEST_CASE("local-global reports stabilize where the theory says so") {
  Subshift cross = five_dot_cross();
  LocalGlobalReport r1 =
      local_equals_global_check(cross, cross.group.ball(1), 2);
  REQUIRE(r1.rows.size() == 3);
  for (const auto& row : r1.rows) CHECK(row.count == 16);
  CHECK(r1.stabilized_at == 1);

  Group z = Group::integer_lattice(1);
  Subshift golden = hard_square(z, FiniteSubset::of(z, {GroupElement{{1}}}));
  LocalGlobalReport r2 = local_equals_global_check(golden, z.folner_window(4), 2);
  CHECK(r2.rows[1].count == 8);
  CHECK(r2.stabilized_at == 1);
  CountOutcome exact = count_admissible(golden, z.folner_window(4), ExactZ{});
  CHECK(r2.rows[1].count == exact.count);

  Subshift full = full_shift(z, 2);
  LocalGlobalReport r3 = local_equals_global_check(full, z.folner_window(3), 2);
  for (const auto& row : r3.rows) CHECK(row.count == 8);
}

TEST_CASE("budget exhaustion is reported, partial counts are lower bounds") {
  Group z = Group::integer_lattice(1);
  Subshift full = full_shift(z, 2);
  FiniteSubset f = z.folner_window(20);
  BudgetConfig tiny;
  tiny.nodes = 500;
  CountOutcome c = count_admissible(full, f, LocalMargin{0}, tiny);
  CHECK_FALSE(c.complete);
  CHECK(c.usage.exhausted);
  CountOutcome full_count = count_admissible(full, f, LocalMargin{0});
  CHECK(c.count <= full_count.count);
  CHECK(full_count.count == BigInt(1) << 20);
}

TEST_CASE("results are bit-identical across thread counts") {
  std::mt19937 rng(43);
  Group z = Group::integer_lattice(1);
  for (int trial = 0; trial < 10; ++trial) {
    Subshift sft = random_z_sft(rng);
    FiniteSubset f = z_interval(z, 0, 9);
    BudgetConfig one, eight;
    one.threads = 1;
    eight.threads = 8;
    CountOutcome c1 = count_admissible(sft, f, LocalMargin{1}, one);
    CountOutcome c8 = count_admissible(sft, f, LocalMargin{1}, eight);
    CHECK(c1.count == c8.count);
    CHECK(c1.complete == c8.complete);
    auto e1 = enumerate_admissible(sft, f, LocalMargin{0}, one);
    auto e8 = enumerate_admissible(sft, f, LocalMargin{0}, eight);
    CHECK(e1.patterns == e8.patterns);
  }
  // budget-limited runs agree as well, including the exhaustion point
  Subshift full = full_shift(z, 2);
  FiniteSubset f = z.folner_window(18);
  for (std::uint64_t nodes : {1000, 40000, 300000}) {
    BudgetConfig one{nodes, 1}, eight{nodes, 8};
    CountOutcome c1 = count_admissible(full, f, LocalMargin{0}, one);
    CountOutcome c8 = count_admissible(full, f, LocalMargin{0}, eight);
    CHECK(c1.count == c8.count);
    CHECK(c1.complete == c8.complete);
  }
}

TEST_CASE("pattern membership respects the level") {
  Subshift cross = five_dot_cross();
  const Group& f2 = cross.group;
  FiniteSubset b1 = f2.ball(1);
  Pattern even{b1, {1, 1, 0, 0, 0}};
  CHECK(member_at_level(cross, even, LocalMargin{0}).member);
  CHECK(member_at_level(cross, even, LocalMargin{1}).member);
  Pattern odd{b1, {1, 0, 0, 0, 0}};
  CHECK_FALSE(member_at_level(cross, odd, LocalMargin{0}).member);
}

#include "shiftlab/zoo.hpp"

#include <cmath>

namespace shiftlab {

Subshift full_shift(const Group& group, int k) {
  if (k < 1) throw UsageError("full shift needs k >= 1");
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back(std::to_string(i));
  bool gf2 = (k == 2);
  return Subshift(group, Alphabet(std::move(names), gf2),
                  ForbiddenPatternsRule{},
                  "full-" + std::to_string(k));
}

Subshift hard_square(const Group& group, const FiniteSubset& f) {
  if (f.contains(group, group.identity()))
    throw UsageError("hard-square neighbor set must not contain the identity");
  Alphabet alphabet({"0", "1"}, true);
  ForbiddenPatternsRule rule;
  for (const auto& s : f) {
    rule.patterns.push_back(make_pattern(
        group, alphabet, {{group.identity(), 1}, {s, 1}}));
  }
  return Subshift(group, alphabet, std::move(rule), "hard-square");
}

Subshift sunny_side_up(const Group& group) {
  return Subshift(group, Alphabet({"0", "1"}),
                  PredicateRule{BuiltinPredicate::sunny_side_up},
                  "sunny-side-up");
}

Subshift five_dot_cross() {
  Group g = Group::free_group(2);
  return Subshift(g, Alphabet({"0", "1"}, true),
                  LinearGf2Rule{{g.ball(1)}}, "five-dot-cross");
}

Subshift perfect_matchings() {
  Group g = Group::free_group(2);
  return Subshift(g, Alphabet({"a", "A", "b", "B"}),
                  PredicateRule{BuiltinPredicate::perfect_matching},
                  "perfect-matchings");
}

Subshift ledrappier() {
  Group g = Group::integer_lattice(2);
  FiniteSubset dots = FiniteSubset::of(
      g, {GroupElement{{0, 0}}, GroupElement{{1, 0}}, GroupElement{{0, 1}}});
  return Subshift(g, Alphabet({"0", "1"}, true), LinearGf2Rule{{dots}},
                  "ledrappier");
}

namespace {

Expectation count_exp(std::string window, std::string level, BigInt count,
                      std::string note) {
  Expectation e;
  e.kind = Expectation::Kind::window_count;
  e.window = std::move(window);
  e.level = std::move(level);
  e.count = std::move(count);
  e.note = std::move(note);
  return e;
}

const double kGoldenEntropy = std::log((1.0 + std::sqrt(5.0)) / 2.0);

std::vector<ZooEntry> build_zoo() {
  std::vector<ZooEntry> out;

  {
    ZooEntry e{"full-2", full_shift(Group::integer_lattice(1), 2),
               "binary full shift on Z, calibration system", {}};
    e.expectations.push_back(
        count_exp("box:8", "local:0", BigInt(256), "2^8, no constraints"));
    e.expectations.push_back(
        count_exp("box:8", "exact-z", BigInt(256), "2^8, no constraints"));
    Expectation rate;
    rate.kind = Expectation::Kind::window_rate_eq;
    rate.window = "box:10";
    rate.level = "exact-z";
    rate.value = std::log(2.0);
    rate.tol = 1e-12;
    rate.note = "rate of a full shift is ln 2 at every window";
    e.expectations.push_back(rate);
    Expectation tmp;
    tmp.kind = Expectation::Kind::tmp_holds;
    tmp.a_set = "set:[0]";
    tmp.b_set = "set:[-1,0,1]";
    tmp.window = "set:[-2,-1,0,1,2]";
    tmp.level = "exact-z";
    tmp.note = "no constraints, every splice stays admissible";
    e.expectations.push_back(tmp);
    Expectation ind;
    ind.kind = Expectation::Kind::independence_size;
    ind.window = "box:8";
    ind.level = "exact-z";
    ind.cylinders = {{{"0", "0"}}, {{"0", "1"}}};
    ind.expected_size = 8;
    ind.note = "symbol cylinders are jointly free on every set";
    e.expectations.push_back(ind);
    Expectation ms;
    ms.kind = Expectation::Kind::microstate_count;
    ms.n = 10;
    ms.beta = 0;
    ms.count = BigInt(1024);
    ms.note = "2^10 cycle labelings, no forbidden words";
    e.expectations.push_back(ms);
    out.push_back(std::move(e));
  }

  {
    ZooEntry e{"full-3", full_shift(Group::integer_lattice(1), 3),
               "ternary full shift on Z, calibration system", {}};
    e.expectations.push_back(
        count_exp("box:6", "exact-z", BigInt(729), "3^6, no constraints"));
    Expectation rate;
    rate.kind = Expectation::Kind::window_rate_eq;
    rate.window = "box:9";
    rate.level = "exact-z";
    rate.value = std::log(3.0);
    rate.tol = 1e-12;
    rate.note = "rate of a full shift is ln 3 at every window";
    e.expectations.push_back(rate);
    Expectation tmp;
    tmp.kind = Expectation::Kind::tmp_holds;
    tmp.a_set = "set:[0]";
    tmp.b_set = "set:[-1,0,1]";
    tmp.window = "set:[-2,-1,0,1,2]";
    tmp.level = "exact-z";
    tmp.note = "no constraints, every splice stays admissible";
    e.expectations.push_back(tmp);
    Expectation ind;
    ind.kind = Expectation::Kind::independence_size;
    ind.window = "box:6";
    ind.level = "exact-z";
    ind.cylinders = {{{"0", "0"}}, {{"0", "1"}}, {{"0", "2"}}};
    ind.expected_size = 6;
    ind.note = "symbol cylinders are jointly free on every set";
    e.expectations.push_back(ind);
    out.push_back(std::move(e));
  }

  {
    Group z = Group::integer_lattice(1);
    ZooEntry e{"golden-mean",
               hard_square(z, FiniteSubset::of(z, {GroupElement{{1}}})),
               "no two adjacent 1s on Z; entropy ln((1+sqrt 5)/2)", {}};
    e.expectations.push_back(count_exp("box:4", "exact-z", BigInt(8),
                                       "brute force over 2^4 words"));
    e.expectations.push_back(count_exp("box:4", "local:1", BigInt(8),
                                       "stabilized local count"));
    Expectation oracle;
    oracle.kind = Expectation::Kind::entropy_oracle;
    oracle.memory = 1;
    oracle.value = kGoldenEntropy;
    oracle.tol = 1e-9;
    oracle.note = "largest eigenvalue of [[1,1],[1,0]]";
    e.expectations.push_back(oracle);
    Expectation rate;
    rate.kind = Expectation::Kind::window_rate_eq;
    rate.window = "box:12";
    rate.level = "exact-z";
    rate.value = kGoldenEntropy;
    rate.tol = 0.05;
    rate.note = "window rate approaches the spectral value";
    e.expectations.push_back(rate);
    Expectation ms;
    ms.kind = Expectation::Kind::microstate_count;
    ms.n = 4;
    ms.beta = 0;
    ms.count = BigInt(7);
    ms.note = "independent sets of the 4-cycle (Lucas number)";
    e.expectations.push_back(ms);
    Expectation tmp;
    tmp.kind = Expectation::Kind::tmp_holds;
    tmp.a_set = "set:[0,1,2,3]";
    tmp.b_set = "set:[-1,0,1,2,3,4]";
    tmp.window = "set:[-3,-2,-1,0,1,2,3,4,5,6]";
    tmp.level = "exact-z";
    tmp.note = "brute force over all admissible pairs";
    e.expectations.push_back(tmp);
    Expectation pair;
    pair.kind = Expectation::Kind::pair_exists;
    pair.a_set = "set:[0]";
    pair.window = "set:[-2,-1,0,1,2]";
    pair.level = "exact-z";
    pair.note = "0-background symbol flip";
    e.expectations.push_back(pair);
    Expectation hom;
    hom.kind = Expectation::Kind::homoclinic_exists;
    hom.radius = 0;
    hom.note = "a single 1 over the 0 background is admissible";
    e.expectations.push_back(hom);
    Expectation ind;
    ind.kind = Expectation::Kind::independence_size;
    ind.window = "box:10";
    ind.level = "exact-z";
    ind.cylinders = {{{"0", "0"}}, {{"0", "1"}}};
    ind.expected_size = 5;
    ind.note = "brute force: gap-2 spacing is optimal on {0..9}";
    e.expectations.push_back(ind);
    out.push_back(std::move(e));
  }

  {
    ZooEntry e{"sunny-side-up", sunny_side_up(Group::integer_lattice(1)),
               "at most one 1 anywhere; not a topological Markov system", {}};
    e.expectations.push_back(
        count_exp("box:8", "local:0", BigInt(9), "|F|+1 patterns"));
    Expectation tmp;
    tmp.kind = Expectation::Kind::tmp_counterexample;
    tmp.a_set = "set:[0]";
    tmp.b_set = "box:5";
    tmp.window = "box:7";
    tmp.note = "two far-apart 1s splice to a forbidden configuration";
    e.expectations.push_back(tmp);
    Expectation rate;
    rate.kind = Expectation::Kind::window_rate_max;
    rate.window = "box:32";
    rate.value = std::log(33.0) / 32.0 + 1e-12;
    rate.note = "count is |F|+1, rate ln(n+1)/n";
    e.expectations.push_back(rate);
    Expectation hom;
    hom.kind = Expectation::Kind::homoclinic_exists;
    hom.radius = 0;
    hom.margin = 2;
    hom.note = "a lone 1 is admissible over the 0 background";
    e.expectations.push_back(hom);
    Expectation ind;
    ind.kind = Expectation::Kind::independence_size;
    ind.window = "box:6";
    ind.cylinders = {{{"0", "0"}}, {{"0", "1"}}};
    ind.expected_size = 1;
    ind.note = "brute force: two 1s never coexist";
    e.expectations.push_back(ind);
    out.push_back(std::move(e));
  }

  {
    ZooEntry e{"five-dot-cross", five_dot_cross(),
               "GF(2) five-dot shift on the free group F_2", {}};
    e.expectations.push_back(count_exp(
        "ball:1", "local:0", BigInt(16), "GF(2) kernel of one parity check"));
    Expectation lg1;
    lg1.kind = Expectation::Kind::local_global_stable;
    lg1.window = "ball:1";
    lg1.r_max = 2;
    lg1.note = "local equals global on connected supports";
    e.expectations.push_back(lg1);
    Expectation lg2;
    lg2.kind = Expectation::Kind::local_global_stable;
    lg2.window = "ball:2";
    lg2.r_max = 1;
    lg2.note = "local equals global on connected supports";
    e.expectations.push_back(lg2);
    Expectation pair;
    pair.kind = Expectation::Kind::pair_none;
    pair.a_set = "ball:1";
    pair.window = "ball:3";
    pair.level = "local:1";
    pair.note = "parity propagates differences outward";
    e.expectations.push_back(pair);
    Expectation hom;
    hom.kind = Expectation::Kind::homoclinic_none;
    hom.radius = 3;
    hom.note = "GF(2) elimination: the finite-support kernel is zero";
    e.expectations.push_back(hom);
    out.push_back(std::move(e));
  }

  {
    ZooEntry e{"perfect-matchings", perfect_matchings(),
               "edge matchings of the F_2 Cayley tree", {}};
    e.expectations.push_back(count_exp("ball:1", "local:0", BigInt(108),
                                       "brute force over 4^5 patterns"));
    Expectation pair;
    pair.kind = Expectation::Kind::pair_none;
    pair.a_set = "ball:1";
    pair.window = "ball:2";
    pair.note = "matching arrows force agreement from outside in";
    e.expectations.push_back(pair);
    Expectation ext;
    ext.kind = Expectation::Kind::extends_true;
    ext.window = "ball:2";
    ext.cylinders = {{{"e", "a"}, {"a", "A"}}};
    ext.note = "extension search";
    e.expectations.push_back(ext);
    out.push_back(std::move(e));
  }

  {
    ZooEntry e{"ledrappier", ledrappier(),
               "three-dot GF(2) shift on Z^2: zero entropy, trivial "
               "homoclinic group", {}};
    for (int n = 1; n <= 5; ++n) {
      e.expectations.push_back(count_exp(
          "box:" + std::to_string(n), "local:0",
          BigInt(1) << (2 * n - 1),
          "GF(2) rank: (n-1)^2 independent checks on n^2 cells"));
    }
    Expectation hom;
    hom.kind = Expectation::Kind::homoclinic_none;
    hom.radius = 6;
    hom.note = "GF(2) elimination: the finite-support kernel is zero";
    e.expectations.push_back(hom);
    Expectation rate;
    rate.kind = Expectation::Kind::window_rate_max;
    rate.window = "box:16";
    rate.value = 0.09;
    rate.note = "closed form (2n-1) ln 2 / n^2 at n = 16";
    e.expectations.push_back(rate);
    out.push_back(std::move(e));
  }

  {
    Group f2 = Group::free_group(2);
    FiniteSubset nbrs = FiniteSubset::of(
        f2, {f2.parse_element("a"), f2.parse_element("b")});
    ZooEntry e{"hard-square-f2", hard_square(f2, nbrs),
               "hard-square model on the free group F_2", {}};
    e.expectations.push_back(count_exp("ball:1", "local:0", BigInt(17),
                                       "brute force over 2^5 patterns"));
    Expectation pair;
    pair.kind = Expectation::Kind::pair_exists;
    pair.a_set = "set:[e]";
    pair.window = "ball:1";
    pair.note = "0-background symbol flip";
    e.expectations.push_back(pair);
    Expectation hom;
    hom.kind = Expectation::Kind::homoclinic_exists;
    hom.radius = 0;
    hom.note = "a single 1 over the 0 background is admissible";
    e.expectations.push_back(hom);
    out.push_back(std::move(e));
  }

  return out;
}

}  // namespace

std::vector<ZooEntry> zoo_entries() {
  std::vector<ZooEntry> entries = build_zoo();
  for (auto& e : entries) e.shift.name = e.name;
  return entries;
}

const ZooEntry& zoo_find(const std::vector<ZooEntry>& entries,
                         const std::string& name) {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw UsageError("no zoo entry named '" + name + "'");
}

}  // namespace shiftlab

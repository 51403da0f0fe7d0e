// Acceptance suite: one pass/fail line per criterion.  Exit code equals the
// number of failing criteria.  Run through ctest as
//   shiftlab-acceptance --cli <path-to-shiftlab> --workdir <scratch dir>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "../helpers.hpp"
#include "expectation_runner.hpp"
#include "shiftlab/certificate.hpp"

using namespace shiftlab;
using namespace shiftlab::acceptance;
using shiftlab::testing::brute_local_patterns;
using shiftlab::testing::random_z_sft;
using shiftlab::testing::z_interval;

namespace {

std::string g_cli;
std::filesystem::path g_workdir;

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  CommandResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Error("cannot spawn: " + cmd);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.output.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string results_section(const std::string& report) {
  std::istringstream in(report);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out << line << "\n";
  return out.str();
}

struct Check {
  std::ostringstream failures;
  int count = 0;

  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok) failures << "    failed: " << what << "\n";
  }
  bool ok() const { return failures.str().empty(); }
};

std::string dump_zoo_spec(const std::string& name) {
  std::filesystem::path p = g_workdir / (name + ".toml");
  CommandResult r = run_cli("zoo dump " + name);
  if (r.exit_code != 0) throw Error("zoo dump failed for " + name);
  std::ofstream out(p);
  out << r.output;
  return p.string();
}

void run_entry_expectations(Check& c, const std::string& name) {
  auto entries = zoo_entries();
  const ZooEntry& entry = zoo_find(entries, name);
  for (const auto& exp : entry.expectations) {
    ExpectationResult r = run_expectation(entry, exp, {});
    c.expect(r.ok, name + ": " + r.detail + "  [" + exp.note + "]");
  }
}

const double kGolden = std::log((1.0 + std::sqrt(5.0)) / 2.0);

// ---- criteria ----

void criterion1(Check& c) {
  auto entries = zoo_entries();
  const ZooEntry& golden = zoo_find(entries, "golden-mean");
  auto oracle = transfer_matrix_entropy(golden.shift, 1);
  c.expect(oracle.has_value() && std::abs(*oracle - kGolden) <= 1e-9,
           "transfer-matrix entropy within 1e-9 of ln((1+sqrt5)/2)");
  EntropySeries s = entropy_series(golden.shift, {12}, ExactZ{});
  c.expect(std::abs(s.rows[0].rate - *oracle) <= 0.05,
           "window-12 rate within 0.05 of the oracle");
  MicrostateCount m16 = cyclic_microstate_count(golden.shift, 16, 0);
  c.expect(std::abs(log_big(m16.count) / 16.0 - *oracle) <= 0.05,
           "ln(microstates(16,0))/16 within 0.05 of the oracle");
  MicrostateCount m4 = cyclic_microstate_count(golden.shift, 4, 0);
  c.expect(m4.count == 7, "microstates(4,0) = 7 exactly");
  run_entry_expectations(c, "golden-mean");
}

void criterion2(Check& c) {
  Group z = Group::integer_lattice(1);
  for (int k : {2, 3}) {
    Subshift full = full_shift(z, k);
    EntropySeries s = entropy_series(full, {4, 8, 12}, ExactZ{});
    for (const auto& row : s.rows)
      c.expect(std::abs(row.rate - std::log(double(k))) <= 1e-12,
               "full-" + std::to_string(k) + " window rate = ln k");
    NaiveEntropyBound nb = naive_entropy_upper(
        full, {z.folner_window(3), z.folner_window(6)}, ExactZ{});
    c.expect(std::abs(nb.value - std::log(double(k))) <= 1e-12,
             "naive upper bound = ln k");
    ScanReport scan = strong_tmp_scan(
        full, z.ball(1),
        {FiniteSubset::of(z, {GroupElement{{0}}}), z.folner_window(2)}, 1,
        ExactZ{});
    c.expect(scan.all_hold(), "tmp scan holds on the full shift");
    FiniteSubset c0 = FiniteSubset::of(z, {GroupElement{{0}}});
    std::vector<Pattern> cyl;
    for (int i = 0; i < k; ++i)
      cyl.push_back(Pattern{c0, {static_cast<Symbol>(i)}});
    IndependenceReport rep =
        independence_density(full, cyl, z.folner_window(6), ExactZ{});
    c.expect(rep.complete && rep.density() == 1.0,
             "independence density 1 on the full shift");
  }
  run_entry_expectations(c, "full-2");
  run_entry_expectations(c, "full-3");
}

void criterion3(Check& c) {
  std::string sunny = dump_zoo_spec("sunny-side-up");
  for (int n = 1; n <= 6; ++n) {
    std::filesystem::path cert =
        g_workdir / ("sunny-tmp-" + std::to_string(n) + ".jsonl");
    CommandResult r = run_cli("tmp --spec " + sunny + " --A set:[0] --B box:" +
                              std::to_string(n) + " --window box:" +
                              std::to_string(n + 2) + " --out " + cert.string());
    c.expect(r.exit_code == 2,
             "cmd_tmp exits 2 at B=box:" + std::to_string(n));
    std::ifstream in(cert);
    std::string line;
    std::filesystem::path only =
        g_workdir / ("sunny-cert-" + std::to_string(n) + ".jsonl");
    std::ofstream out(only);
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') out << line << "\n";
    out.close();
    CommandResult v = run_cli("verify " + only.string());
    c.expect(v.exit_code == 0,
             "certificate verifies at B=box:" + std::to_string(n));
  }
  Subshift sunny_shift = sunny_side_up(Group::integer_lattice(1));
  EntropySeries s = entropy_series(sunny_shift, {32}, LocalMargin{0});
  c.expect(s.rows[0].rate <= std::log(33.0) / 32.0 + 1e-12,
           "window-32 rate at most ln(33)/32");
  run_entry_expectations(c, "sunny-side-up");
}

void criterion4(Check& c) {
  Group z = Group::integer_lattice(1);
  auto entries = zoo_entries();
  const Subshift& golden = zoo_find(entries, "golden-mean").shift;
  HomoclinicOutcome h = homoclinic_search(golden, 0, 0);
  c.expect(h.witness.has_value() &&
               h.witness->values == std::vector<Symbol>{1},
           "homoclinic witness delta_e at radius 0");
  FiniteSubset a = FiniteSubset::of(z, {GroupElement{{0}}});
  PairSearchOutcome pair =
      find_interchangeable_pair(golden, a, z_interval(z, -2, 2), ExactZ{});
  c.expect(pair.witness.has_value(), "interchangeable pair at A={0}");
  FiniteSubset c0 = FiniteSubset::of(z, {GroupElement{{0}}});
  std::vector<Pattern> cyl{{c0, {0}}, {c0, {1}}};
  IndependenceReport rep10 =
      independence_density(golden, cyl, z.folner_window(10), ExactZ{});
  c.expect(rep10.complete && rep10.best_set.size() == 5,
           "independence density 5/10 on {0..9}");
  std::vector<Pattern> wit{pair.witness->p, pair.witness->q};
  IndependenceReport rep16 =
      independence_density(golden, wit, z.folner_window(16), ExactZ{});
  c.expect(rep16.density() >= 0.25,
           "witness cylinders reach density >= 1/4 on {0..15}");
  c.expect(*transfer_matrix_entropy(golden, 1) > 0, "positive entropy");
  run_entry_expectations(c, "hard-square-f2");
}

void criterion5(Check& c) {
  Subshift cross = five_dot_cross();
  const Group& f2 = cross.group;
  CountOutcome b1 = count_admissible(cross, f2.ball(1), LocalMargin{0});
  c.expect(b1.count == 16, "count on B1 at local:0 is 16");
  LocalGlobalReport r1 = local_equals_global_check(cross, f2.ball(1), 2);
  bool stable1 = !r1.rows.empty();
  for (const auto& row : r1.rows)
    stable1 = stable1 && row.complete && row.count == r1.rows[0].count;
  c.expect(stable1 && r1.stabilized_at.has_value(),
           "local-global counts stable on B1 up to r=2");
  LocalGlobalReport r2 = local_equals_global_check(cross, f2.ball(2), 1);
  c.expect(r2.rows.size() == 2 && r2.rows[0].count == r2.rows[1].count,
           "local-global counts stable on B2");
  PairSearchOutcome pair =
      find_interchangeable_pair(cross, f2.ball(1), f2.ball(3), LocalMargin{1});
  c.expect(pair.complete && !pair.witness.has_value(),
           "no interchangeable pair at A=B1, W=B3");
  for (int n = 1; n <= 3; ++n) {
    HomoclinicOutcome hc = homoclinic_search(cross, 0, n);
    c.expect(hc.complete && !hc.witness.has_value(),
             "no homoclinic witness at radius " + std::to_string(n));
  }
  run_entry_expectations(c, "five-dot-cross");
}

void criterion6(Check& c) {
  Subshift pm = perfect_matchings();
  const Group& f2 = pm.group;
  CountOutcome b1 = count_admissible(pm, f2.ball(1), LocalMargin{0});
  c.expect(b1.count == 108, "count on B1 is 108");
  PairSearchOutcome pair =
      find_interchangeable_pair(pm, f2.ball(1), f2.ball(2), LocalMargin{0});
  c.expect(pair.complete && !pair.witness.has_value(),
           "no interchangeable pair at A=B1, W=B2");
  run_entry_expectations(c, "perfect-matchings");
}

void criterion7(Check& c) {
  Subshift led = ledrappier();
  for (int n = 1; n <= 5; ++n) {
    CountOutcome box =
        count_admissible(led, led.group.folner_window(n), LocalMargin{0});
    c.expect(box.count == BigInt(1) << (2 * n - 1),
             "box count 2^(2n-1) at n=" + std::to_string(n));
  }
  for (int n = 1; n <= 6; ++n) {
    HomoclinicOutcome h = homoclinic_search(led, 0, n);
    c.expect(h.complete && !h.witness.has_value(),
             "no homoclinic witness at radius " + std::to_string(n));
  }
  EntropySeries s = entropy_series(led, {16}, LocalMargin{0});
  c.expect(s.rows[0].rate <= 0.09, "rate at n=16 at most 0.09");
  run_entry_expectations(c, "ledrappier");
}

void criterion8(Check& c) {
  std::mt19937 rng(2024);
  Group z = Group::integer_lattice(1);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Subshift sft = random_z_sft(rng);
    FiniteSubset f = z_interval(z, 0, 7);
    CountOutcome dfs = count_admissible(sft, f, LocalMargin{0});
    auto brute = brute_local_patterns(sft, f, 0);
    if (!(dfs.complete && dfs.count == BigInt(brute.size()))) {
      c.expect(false,
               "DFS equals brute filter on instance " + std::to_string(trial));
      return;
    }
    CountOutcome exact = count_admissible(sft, f, ExactZ{});
    CountOutcome local3 = count_admissible(sft, f, LocalMargin{3});
    if (!(exact.count == local3.count)) {
      c.expect(false,
               "exact-z equals local:3 on instance " + std::to_string(trial));
      return;
    }
    ++checked;
  }
  c.expect(checked == 50, "all 50 random systems agree with the oracles");
}

void criterion9(Check& c) {
  std::string golden = dump_zoo_spec("golden-mean");
  std::string sunny = dump_zoo_spec("sunny-side-up");
  std::string cross = dump_zoo_spec("five-dot-cross");
  std::string pm = dump_zoo_spec("perfect-matchings");
  std::string led = dump_zoo_spec("ledrappier");
  std::string full2 = dump_zoo_spec("full-2");
  std::vector<std::string> commands = {
      "count --spec " + golden + " --F box:12 --level exact-z",
      "entropy --spec " + golden +
          " --windows 4,8,12 --level exact-z --oracle-memory 1",
      "entropy --spec " + full2 + " --windows 4,8,12 --level exact-z",
      "count --spec " + cross + " --F ball:1",
      "count --spec " + pm + " --F ball:1",
      "count --spec " + led + " --F box:4",
      "asym --spec " + pm + " --A ball:1 --window ball:2",
      "asym --spec " + golden +
          " --A set:[0] --window set:[-2,-1,0,1,2] --level exact-z",
      "homoclinic --spec " + led + " --radius 4",
      "tmp --spec " + sunny + " --A set:[0] --B box:5 --window box:7",
      "indep --spec " + golden +
          " --cyl-support set:[0] --cylinders '0;1' --F box:10 --level exact-z",
      "microstates --spec " + golden + " --n 16 --beta 0",
  };
  for (const auto& cmd : commands) {
    CommandResult one = run_cli(cmd + " --threads 1");
    CommandResult eight = run_cli(cmd + " --threads 8");
    bool same = results_section(one.output) == results_section(eight.output) &&
                one.exit_code == eight.exit_code;
    c.expect(same, "bit-identical results for: " + cmd);
  }
}

void criterion10(Check& c) {
  std::string golden = dump_zoo_spec("golden-mean");
  std::string sunny = dump_zoo_spec("sunny-side-up");
  struct Emit {
    std::string cmd;
    int expect_exit;
  };
  std::vector<Emit> emits = {
      {"tmp --spec " + sunny + " --A set:[0] --B box:4 --window box:6", 2},
      {"asym --spec " + golden +
           " --A set:[0] --window set:[-2,-1,0,1,2] --level exact-z", 0},
      {"homoclinic --spec " + golden + " --radius 1", 0},
      {"indep --spec " + golden +
           " --cyl-support set:[0] --cylinders '0;1' --F box:8 --level exact-z",
       0},
  };
  std::filesystem::path all = g_workdir / "all-certs.jsonl";
  std::ofstream collected(all);
  for (const auto& e : emits) {
    CommandResult r = run_cli(e.cmd);
    c.expect(r.exit_code == e.expect_exit, "exit code of: " + e.cmd);
    std::istringstream in(r.output);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty() && line[0] == '{' &&
          line.find("\"sig\"") != std::string::npos)
        collected << line << "\n";
  }
  collected.close();
  CommandResult v = run_cli("verify " + all.string());
  c.expect(v.exit_code == 0, "all emitted certificates verify");

  std::ifstream in(all);
  std::string line;
  int mutated = 0, rejected = 0;
  while (std::getline(in, line)) {
    std::size_t pos = line.find("\"values\":[\"");
    if (pos == std::string::npos) continue;
    std::string bad = line;
    char& ch = bad[pos + 11];
    ch = (ch == '0') ? '1' : '0';
    std::filesystem::path mut = g_workdir / "mutated.jsonl";
    std::ofstream out(mut);
    out << bad << "\n";
    out.close();
    CommandResult mv = run_cli("verify " + mut.string());
    ++mutated;
    rejected += (mv.exit_code != 0);
  }
  c.expect(mutated > 0 && mutated == rejected,
           "every mutated certificate is rejected (" +
               std::to_string(rejected) + "/" + std::to_string(mutated) + ")");
}

void zoo_manifest(Check& c) {
  for (const auto& entry : zoo_entries()) run_entry_expectations(c, entry.name);
}

void cli_exit_codes(Check& c) {
  std::string golden = dump_zoo_spec("golden-mean");
  std::string pm = dump_zoo_spec("perfect-matchings");

  CommandResult usage = run_cli("count --spec " + golden);  // --F missing
  c.expect(usage.exit_code == 64, "missing required flag exits 64");

  std::filesystem::path broken = g_workdir / "broken.toml";
  std::ofstream bad(broken);
  bad << "group = \"Z\"\nalphabet = [\"0\", \"1\"]\nrule = \"forbidden\"\n"
         "forbidden = [[[\"0\", \"7\"]]]\n";
  bad.close();
  CommandResult data =
      run_cli("count --spec " + broken.string() + " --F box:2");
  c.expect(data.exit_code == 65, "spec validation failure exits 65");

  CommandResult none =
      run_cli("asym --spec " + pm + " --A ball:1 --window ball:2");
  c.expect(none.exit_code == 3, "none-up-to-scale exits 3");

  CommandResult budget = run_cli("count --spec " + golden +
                                 " --F box:30 --level local:0 --budget 100");
  c.expect(budget.exit_code == 4, "budget exhaustion exits 4");

  CommandResult holds = run_cli(
      "tmp --spec " + golden +
      " --A set:[0] --B set:[-1,0,1] --window set:[-2,-1,0,1,2] --level exact-z");
  c.expect(holds.exit_code == 0, "a holds verdict exits 0");
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string key = argv[i];
    if (key == "--cli") g_cli = argv[i + 1];
    if (key == "--workdir") g_workdir = argv[i + 1];
  }
  if (g_cli.empty() || g_workdir.empty()) {
    std::cerr << "usage: shiftlab-acceptance --cli <shiftlab> --workdir <dir>\n";
    return 64;
  }
  std::filesystem::create_directories(g_workdir);

  struct Criterion {
    std::string name;
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> criteria = {
      {"criterion-1 golden-mean entropy oracle chain", criterion1},
      {"criterion-2 full shifts: rates, naive bound, tmp, independence",
       criterion2},
      {"criterion-3 sunny-side-up tmp counterexamples + rate bound",
       criterion3},
      {"criterion-4 hard-square witnesses and densities", criterion4},
      {"criterion-5 five-dot cross on F2", criterion5},
      {"criterion-6 perfect matchings on F2", criterion6},
      {"criterion-7 ledrappier calibration", criterion7},
      {"criterion-8 oracle equivalence on 50 random Z SFTs", criterion8},
      {"criterion-9 bit-identical reports across thread counts", criterion9},
      {"criterion-10 certificates verify, mutations rejected", criterion10},
      {"zoo-manifest every documented expectation", zoo_manifest},
      {"cli-exit-codes contract", cli_exit_codes},
  };

  int failures = 0;
  for (auto& cr : criteria) {
    Check check;
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    if (check.ok()) {
      std::cout << "PASS " << cr.name << " (" << check.count << " checks)\n";
    } else {
      std::cout << "FAIL " << cr.name << "\n" << check.failures.str();
      ++failures;
    }
  }
  return failures;
}

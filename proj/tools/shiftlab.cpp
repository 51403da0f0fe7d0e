// shiftlab: admissible-pattern counting, entropy estimation, Markov-property
// checks and witness searches for subshifts over Z^d and free groups.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "shiftlab/automaton.hpp"
#include "shiftlab/certificate.hpp"
#include "shiftlab/engine.hpp"
#include "shiftlab/entropy.hpp"
#include "shiftlab/specfile.hpp"
#include "shiftlab/tmp.hpp"
#include "shiftlab/zoo.hpp"

namespace {

using namespace shiftlab;

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 2;
constexpr int kExitNoneUpToScale = 3;
constexpr int kExitBudget = 4;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct CommonOptions {
  std::string spec_path;
  std::string level = "local:0";
  std::string out;
  std::uint64_t budget = 10'000'000;
  int threads = 0;  // 0: machine parallelism
  bool progress = false;
};

void add_common(CLI::App* cmd, CommonOptions* opt, bool needs_spec = true) {
  if (needs_spec)
    cmd->add_option("--spec", opt->spec_path, "subshift file")->required();
  cmd->add_option("--level", opt->level, "admissibility level (local:<r> | exact-z)");
  cmd->add_option("--out", opt->out, "write the report to this file");
  cmd->add_option("--budget", opt->budget, "search-node budget");
  cmd->add_option("--threads", opt->threads,
                  "worker threads (default: machine parallelism)");
  cmd->add_flag("--progress", opt->progress, "progress notes on stderr");
}

BudgetConfig budget_of(const CommonOptions& opt) {
  BudgetConfig b;
  b.nodes = opt.budget;
  b.threads = opt.threads > 0
                  ? opt.threads
                  : static_cast<int>(std::thread::hardware_concurrency());
  if (b.threads < 1) b.threads = 1;
  return b;
}

void progress(const CommonOptions& opt, const std::string& msg) {
  if (opt.progress) std::cerr << "progress: " << msg << std::endl;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Report {
  std::vector<std::string> header;
  std::vector<std::string> results;

  void emit(const std::string& out_path) const {
    std::ostringstream ss;
    for (const auto& line : header) ss << "# " << line << "\n";
    for (const auto& line : results) ss << line << "\n";
    if (out_path.empty()) {
      std::cout << ss.str();
    } else {
      std::ofstream out(out_path);
      if (!out) throw Error("cannot open output file '" + out_path + "'");
      out << ss.str();
    }
  }
};

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string g_command_echo;

Report make_report(const std::string& command, const SpecFile& spec,
                   const std::string& level, const BudgetUsage& usage,
                   const Timer& timer) {
  Report r;
  r.header.push_back(g_command_echo.empty() ? "shiftlab " + command
                                            : g_command_echo);
  r.header.push_back("spec-hash: " + spec.hash);
  r.header.push_back("level: " + level);
  r.header.push_back("budget: used=" + std::to_string(usage.nodes) +
                     " exhausted=" + (usage.exhausted ? "true" : "false"));
  r.header.push_back("wall-ms: " + std::to_string(timer.ms()));
  return r;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw UsageError("expected a comma-separated integer list");
  return out;
}

int run_count(const CommonOptions& opt, const std::string& f_desc) {
  Timer timer;
  SpecFile spec = load_spec_file(opt.spec_path);
  Level level = parse_level(opt.level);
  FiniteSubset f = parse_set_descriptor(spec.shift.group, f_desc);
  progress(opt, "counting on " + f_desc);
  CountOutcome c = count_admissible(spec.shift, f, level, budget_of(opt));
  Report report = make_report("count", spec, opt.level, c.usage, timer);
  report.results.push_back("F,size,count,complete");
  report.results.push_back(f_desc + "," + std::to_string(f.size()) + "," +
                           c.count.str() + "," +
                           (c.complete ? "true" : "false"));
  report.emit(opt.out);
  return c.complete ? kExitOk : kExitBudget;
}

int run_entropy(const CommonOptions& opt, const std::string& windows_text,
                std::optional<int> oracle_memory) {
  Timer timer;
  SpecFile spec = load_spec_file(opt.spec_path);
  Level level = parse_level(opt.level);
  std::vector<int> windows = parse_int_list(windows_text);
  EntropySeries series;
  series.level = level;
  for (int n : windows) {
    progress(opt, "window " + std::to_string(n));
    EntropySeries one = entropy_series(spec.shift, {n}, level, budget_of(opt));
    series.folner_windows = one.folner_windows;
    series.usage.nodes += one.usage.nodes;
    series.usage.exhausted |= one.usage.exhausted;
    series.rows.push_back(std::move(one.rows[0]));
  }
  std::optional<double> oracle;
  if (oracle_memory) {
    progress(opt, "transfer-matrix oracle");
    oracle = transfer_matrix_entropy(spec.shift, *oracle_memory);
  }

  Report report = make_report("entropy", spec, opt.level, series.usage, timer);
  if (!series.folner_windows)
    report.header.push_back(
        "windows are balls, not Folner sets: rates are window rates, "
        "not entropy estimates");
  std::string head = "window,size,count,rate";
  if (oracle_memory) head += ",oracle";
  report.results.push_back(head);
  for (const auto& row : series.rows) {
    std::string line = row.window_id + "," + std::to_string(row.window_size) +
                       "," + row.count.str() + "," +
                       (row.complete ? fmt_double(row.rate) : "budget");
    if (oracle_memory)
      line += "," + (oracle ? fmt_double(*oracle) : std::string("empty"));
    report.results.push_back(line);
  }
  report.emit(opt.out);
  return series.usage.exhausted ? kExitBudget : kExitOk;
}

std::string verdict_line(const SpecFile& spec, const Level& level,
                         const FiniteSubset& a, const FiniteSubset& b,
                         const FiniteSubset& w, const Verdict& verdict) {
  if (verdict.holds())
    return std::string("{\"kind\":\"tmp-holds\",\"level\":\"") +
           format_level(level) + "\",\"spec_hash\":\"" + spec.hash + "\"}";
  if (const auto* ce = verdict.counterexample())
    return tmp_counterexample_line(spec.shift, level, a, b, w, *ce);
  return "{\"kind\":\"inconclusive\"}";
}

int run_tmp(const CommonOptions& opt, const std::string& a_desc,
            const std::string& b_desc, const std::string& w_desc,
            const std::string& scan_margin, const std::string& scan_supports,
            int growth, const std::string& side_text) {
  Timer timer;
  SpecFile spec = load_spec_file(opt.spec_path);
  Level level = parse_level(opt.level);
  const Group& g = spec.shift.group;

  if (!scan_margin.empty()) {
    FiniteSubset margin = parse_set_descriptor(g, scan_margin);
    std::vector<FiniteSubset> supports;
    std::stringstream ss(scan_supports);
    std::string tok;
    while (std::getline(ss, tok, ';'))
      if (!tok.empty()) supports.push_back(parse_set_descriptor(g, tok));
    if (supports.empty()) throw UsageError("--scan needs support descriptors");
    MarginSide side = side_text == "fa" ? MarginSide::f_times_a
                                        : MarginSide::a_times_f;
    progress(opt, "scanning " + std::to_string(supports.size()) + " supports");
    ScanReport scan = strong_tmp_scan(spec.shift, margin, supports, growth,
                                      level, budget_of(opt), side);
    BudgetUsage usage;
    bool any_ce = false, any_inconclusive = false;
    for (const auto& row : scan.rows) {
      usage.nodes += row.verdict.usage.nodes;
      usage.exhausted |= row.verdict.usage.exhausted;
      any_ce |= row.verdict.counterexample() != nullptr;
      any_inconclusive |= row.verdict.inconclusive();
    }
    Report report = make_report("tmp --scan", spec, opt.level, usage, timer);
    for (const auto& row : scan.rows)
      report.results.push_back(
          verdict_line(spec, level, row.a, row.b, row.window, row.verdict));
    report.emit(opt.out);
    if (any_ce) return kExitCounterexample;
    if (any_inconclusive) return kExitBudget;
    return kExitOk;
  }

  FiniteSubset a = parse_set_descriptor(g, a_desc);
  FiniteSubset b = parse_set_descriptor(g, b_desc);
  FiniteSubset w =
      w_desc.empty() ? b.product(g, g.ball(1)) : parse_set_descriptor(g, w_desc);
  progress(opt, "checking the memory set");
  Verdict verdict =
      check_memory_set(spec.shift, a, b, w, level, budget_of(opt));
  Report report =
      make_report("tmp", spec, opt.level, verdict.usage, timer);
  report.results.push_back(verdict_line(spec, level, a, b, w, verdict));
  report.emit(opt.out);
  if (verdict.counterexample()) return kExitCounterexample;
  if (verdict.inconclusive()) return kExitBudget;
  return kExitOk;
}

int run_asym(const CommonOptions& opt, const std::string& a_desc,
             const std::string& w_desc) {
  Timer timer;
  SpecFile spec = load_spec_file(opt.spec_path);
  Level level = parse_level(opt.level);
  const Group& g = spec.shift.group;
  FiniteSubset a = parse_set_descriptor(g, a_desc);
  FiniteSubset w = parse_set_descriptor(g, w_desc);
  progress(opt, "searching interchangeable pairs");
  PairSearchOutcome outcome =
      find_interchangeable_pair(spec.shift, a, w, level, budget_of(opt));
  Report report = make_report("asym", spec, opt.level, outcome.usage, timer);
  int code;
  if (outcome.witness) {
    report.results.push_back(pair_witness_line(spec.shift, *outcome.witness));
    code = kExitOk;
  } else if (outcome.complete) {
    report.results.push_back(
        std::string("{\"kind\":\"none-up-to-scale\",\"level\":\"") +
        format_level(level) + "\",\"spec_hash\":\"" + spec.hash + "\"}");
    code = kExitNoneUpToScale;
  } else {
    report.results.push_back("{\"kind\":\"inconclusive\"}");
    code = kExitBudget;
  }
  report.emit(opt.out);
  return code;
}

int run_homoclinic(const CommonOptions& opt, const std::string& background,
                   int radius, std::optional<int> margin) {
  Timer timer;
  SpecFile spec = load_spec_file(opt.spec_path);
  auto bg = spec.shift.alphabet.index_of(background);
  if (!bg) throw UsageError("unknown background symbol '" + background + "'");
  progress(opt, "searching radius " + std::to_string(radius));
  HomoclinicOutcome outcome =
      homoclinic_search(spec.shift, *bg, radius, margin, budget_of(opt));
  Report report =
      make_report("homoclinic", spec, "local:0", outcome.usage, timer);
  int code;
  if (outcome.witness) {
    report.results.push_back(homoclinic_witness_line(
        spec.shift, *bg, outcome.radius, outcome.margin, *outcome.witness));
    code = kExitOk;
  } else if (outcome.complete) {
    report.results.push_back(
        "{\"kind\":\"none-up-to-scale\",\"radius\":" +
        std::to_string(outcome.radius) +
        ",\"margin\":" + std::to_string(outcome.margin) + ",\"spec_hash\":\"" +
        spec.hash + "\"}");
    code = kExitNoneUpToScale;
  } else {
    report.results.push_back("{\"kind\":\"inconclusive\"}");
    code = kExitBudget;
  }
  report.emit(opt.out);
  return code;
}

int run_indep(const CommonOptions& opt, const std::string& support_desc,
              const std::string& cylinders_text, const std::string& f_desc) {
  Timer timer;
  SpecFile spec = load_spec_file(opt.spec_path);
  Level level = parse_level(opt.level);
  const Group& g = spec.shift.group;
  FiniteSubset support = parse_set_descriptor(g, support_desc);
  FiniteSubset f = parse_set_descriptor(g, f_desc);

  std::vector<Pattern> cylinders;
  std::stringstream ss(cylinders_text);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok.empty()) continue;
    std::vector<std::string> names;
    std::stringstream cs(tok);
    std::string sym;
    while (std::getline(cs, sym, ',')) names.push_back(sym);
    if (names.size() != support.size())
      throw UsageError("cylinder needs one symbol per support site");
    std::vector<Symbol> values;
    for (const auto& name : names) {
      auto idx = spec.shift.alphabet.index_of(name);
      if (!idx) throw UsageError("unknown symbol '" + name + "'");
      values.push_back(*idx);
    }
    cylinders.push_back(Pattern{support, std::move(values)});
  }
  progress(opt, "branch and bound over " + f_desc);
  IndependenceReport rep =
      independence_density(spec.shift, cylinders, f, level, budget_of(opt));
  Report report = make_report("indep", spec, opt.level, rep.usage, timer);
  report.results.push_back(
      "{\"best_size\":" + std::to_string(rep.best_set.size()) +
      ",\"F_size\":" + std::to_string(f.size()) +
      ",\"density\":" + fmt_double(rep.density()) +
      ",\"complete\":" + (rep.complete ? "true" : "false") + "}");
  report.results.push_back(independence_set_line(
      spec.shift, level, cylinders, f, rep.best_set));
  report.emit(opt.out);
  return rep.complete ? kExitOk : kExitBudget;
}

int run_microstates(const CommonOptions& opt, int n, int beta) {
  Timer timer;
  SpecFile spec = load_spec_file(opt.spec_path);
  progress(opt, "cycle length " + std::to_string(n));
  MicrostateCount mc =
      cyclic_microstate_count(spec.shift, n, beta, budget_of(opt));
  Report report = make_report("microstates", spec, "-", mc.usage, timer);
  report.results.push_back("n,beta,count,rate");
  double rate = mc.count > 0 ? log_big(mc.count) / n : 0.0;
  report.results.push_back(std::to_string(n) + "," + std::to_string(beta) +
                           "," + mc.count.str() + "," +
                           (mc.complete ? fmt_double(rate) : "budget"));
  report.emit(opt.out);
  return mc.complete ? kExitOk : kExitBudget;
}

int run_verify(const std::string& path, const BudgetConfig& budget) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open certificate file '" + path + "'");
  std::string line;
  int line_no = 0;
  bool all_ok = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    VerifyResult r = verify_certificate_line(line, budget);
    std::cout << "line " << line_no << ": " << (r.ok ? "ok" : "FAIL") << " ("
              << r.detail << ")\n";
    all_ok &= r.ok;
  }
  if (line_no == 0) throw Error("certificate file is empty");
  return all_ok ? kExitOk : kExitVerifyFailed;
}

int run_zoo(const std::string& action, const std::string& name) {
  auto entries = zoo_entries();
  if (action == "list") {
    for (const auto& e : entries) std::cout << e.name << "\n";
    return kExitOk;
  }
  const ZooEntry& e = zoo_find(entries, name);
  std::cout << serialize_spec(e.shift);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) {
    if (i) g_command_echo += ' ';
    g_command_echo += i == 0 ? "shiftlab" : argv[i];
  }

  CLI::App app{"shiftlab: symbolic dynamics over Z^d and free groups"};
  app.require_subcommand(1);

  CommonOptions count_opt;
  std::string count_f;
  CLI::App* count_cmd = app.add_subcommand("count", "count admissible patterns");
  add_common(count_cmd, &count_opt);
  count_cmd->add_option("--F", count_f, "support descriptor")->required();

  CommonOptions entropy_opt;
  std::string entropy_windows;
  std::optional<int> entropy_oracle;
  CLI::App* entropy_cmd =
      app.add_subcommand("entropy", "pattern-count entropy series");
  add_common(entropy_cmd, &entropy_opt);
  entropy_cmd->add_option("--windows", entropy_windows, "window sizes, e.g. 4,8,12")
      ->required();
  entropy_cmd->add_option("--oracle-memory", entropy_oracle,
                          "append a transfer-matrix oracle column");

  CommonOptions tmp_opt;
  std::string tmp_a, tmp_b, tmp_w, tmp_margin, tmp_scan, tmp_side = "af";
  int tmp_growth = 1;
  CLI::App* tmp_cmd = app.add_subcommand("tmp", "memory-set splice checks");
  add_common(tmp_cmd, &tmp_opt);
  tmp_cmd->add_option("--A", tmp_a, "inner set descriptor");
  tmp_cmd->add_option("--B", tmp_b, "memory-set descriptor");
  tmp_cmd->add_option("--window", tmp_w, "window descriptor (default B.ball(1))");
  tmp_cmd->add_option("--margin", tmp_margin, "strong-TMP margin F (scan mode)");
  tmp_cmd->add_option("--scan", tmp_scan, "';'-separated support descriptors");
  tmp_cmd->add_option("--growth", tmp_growth, "window growth for scan mode");
  tmp_cmd->add_option("--side", tmp_side, "margin side: af (A.F) or fa (F.A)");

  CommonOptions asym_opt;
  std::string asym_a, asym_w;
  CLI::App* asym_cmd =
      app.add_subcommand("asym", "interchangeable-pattern search");
  add_common(asym_cmd, &asym_opt);
  asym_cmd->add_option("--A", asym_a, "difference set descriptor")->required();
  asym_cmd->add_option("--window", asym_w, "window descriptor")->required();

  CommonOptions hom_opt;
  std::string hom_bg = "0";
  int hom_radius = 0;
  std::optional<int> hom_margin;
  CLI::App* hom_cmd =
      app.add_subcommand("homoclinic", "homoclinic witness search");
  add_common(hom_cmd, &hom_opt);
  hom_cmd->add_option("--background", hom_bg, "background symbol");
  hom_cmd->add_option("--radius", hom_radius, "support ball radius")->required();
  hom_cmd->add_option("--margin", hom_margin,
                      "check margin (default: rule diameter)");

  CommonOptions indep_opt;
  std::string indep_support, indep_cyls, indep_f;
  CLI::App* indep_cmd =
      app.add_subcommand("indep", "independence density search");
  add_common(indep_cmd, &indep_opt);
  indep_cmd->add_option("--cyl-support", indep_support,
                        "shared cylinder support descriptor")
      ->required();
  indep_cmd
      ->add_option("--cylinders", indep_cyls,
                   "';'-separated cylinders, each a ','-separated symbol list")
      ->required();
  indep_cmd->add_option("--F", indep_f, "ambient set descriptor")->required();

  CommonOptions ms_opt;
  int ms_n = 0, ms_beta = 0;
  CLI::App* ms_cmd =
      app.add_subcommand("microstates", "cyclic sofic-microstate counts");
  add_common(ms_cmd, &ms_opt);
  ms_cmd->add_option("--n", ms_n, "cycle length")->required();
  ms_cmd->add_option("--beta", ms_beta, "defect budget");

  CommonOptions verify_opt;
  std::string verify_path;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "re-check a certificate file");
  verify_cmd->add_option("file", verify_path, "JSON-lines certificate file")
      ->required();
  verify_cmd->add_option("--budget", verify_opt.budget, "search-node budget");
  verify_cmd->add_option("--threads", verify_opt.threads, "worker threads");

  CommonOptions zoo_opt;
  std::string zoo_action, zoo_name;
  CLI::App* zoo_cmd = app.add_subcommand("zoo", "built-in systems");
  zoo_cmd->add_option("action", zoo_action, "list | dump")->required();
  zoo_cmd->add_option("name", zoo_name, "entry name (for dump)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (count_cmd->parsed()) return run_count(count_opt, count_f);
    if (entropy_cmd->parsed())
      return run_entropy(entropy_opt, entropy_windows, entropy_oracle);
    if (tmp_cmd->parsed()) {
      if (tmp_margin.empty() && (tmp_a.empty() || tmp_b.empty()))
        throw UsageError("tmp needs either --A/--B or --margin/--scan");
      return run_tmp(tmp_opt, tmp_a, tmp_b, tmp_w, tmp_margin, tmp_scan,
                     tmp_growth, tmp_side);
    }
    if (asym_cmd->parsed()) return run_asym(asym_opt, asym_a, asym_w);
    if (hom_cmd->parsed())
      return run_homoclinic(hom_opt, hom_bg, hom_radius, hom_margin);
    if (indep_cmd->parsed())
      return run_indep(indep_opt, indep_support, indep_cyls, indep_f);
    if (ms_cmd->parsed()) return run_microstates(ms_opt, ms_n, ms_beta);
    if (verify_cmd->parsed())
      return run_verify(verify_path, budget_of(verify_opt));
    if (zoo_cmd->parsed()) {
      if (zoo_action != "list" && zoo_action != "dump")
        throw UsageError("zoo action must be list or dump");
      if (zoo_action == "dump" && zoo_name.empty())
        throw UsageError("zoo dump needs an entry name");
      return run_zoo(zoo_action, zoo_name);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

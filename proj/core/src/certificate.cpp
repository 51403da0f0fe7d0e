#include "shiftlab/certificate.hpp"

#include <json.hpp>

#include "shiftlab/engine.hpp"
#include "shiftlab/specfile.hpp"

namespace shiftlab {

namespace {

using nlohmann::json;

json pattern_json(const Subshift& shift, const Pattern& p) {
  json sites = json::array(), values = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    sites.push_back(shift.group.format_element(p.support[i]));
    values.push_back(shift.alphabet.name(p.values[i]));
  }
  return json{{"sites", sites}, {"values", values}};
}

json set_json(const Subshift& shift, const FiniteSubset& f) {
  json sites = json::array();
  for (const auto& e : f) sites.push_back(shift.group.format_element(e));
  return sites;
}

Pattern pattern_from_json(const Subshift& shift, const json& j) {
  std::vector<std::pair<GroupElement, Symbol>> entries;
  const auto& sites = j.at("sites");
  const auto& values = j.at("values");
  if (sites.size() != values.size())
    throw UsageError("certificate pattern sites/values mismatch");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    auto idx = shift.alphabet.index_of(values[i].get<std::string>());
    if (!idx) throw UsageError("certificate pattern has an unknown symbol");
    entries.emplace_back(
        shift.group.parse_element(sites[i].get<std::string>()), *idx);
  }
  return make_pattern(shift.group, shift.alphabet, entries);
}

FiniteSubset set_from_json(const Subshift& shift, const json& j) {
  std::vector<GroupElement> elems;
  for (const auto& s : j)
    elems.push_back(shift.group.parse_element(s.get<std::string>()));
  return FiniteSubset::of(shift.group, std::move(elems));
}

std::string finalize_line(const Subshift& shift, const std::string& kind,
                          const std::string& level, json payload) {
  SpecFile sf = spec_file_for(shift);
  json cert{{"kind", kind},
            {"level", level},
            {"payload", std::move(payload)},
            {"spec", sf.normalized},
            {"spec_hash", sf.hash}};
  cert["sig"] = sha256_hex(cert.dump());
  return cert.dump();
}

}  // namespace

std::string tmp_counterexample_line(const Subshift& shift, const Level& level,
                                    const FiniteSubset& a,
                                    const FiniteSubset& b,
                                    const FiniteSubset& window,
                                    const TmpCounterexample& ce) {
  json payload{{"A", set_json(shift, a)},
               {"B", set_json(shift, b)},
               {"window", set_json(shift, window)},
               {"x", pattern_json(shift, ce.x)},
               {"y", pattern_json(shift, ce.y)}};
  return finalize_line(shift, "tmp-counterexample", format_level(level),
                       std::move(payload));
}

std::string pair_witness_line(const Subshift& shift, const PairWitness& w) {
  json payload{{"A", set_json(shift, w.a)},
               {"window", set_json(shift, w.window)},
               {"p", pattern_json(shift, w.p)},
               {"q", pattern_json(shift, w.q)},
               {"context", pattern_json(shift, w.context)}};
  return finalize_line(shift, "pair-witness", format_level(w.level),
                       std::move(payload));
}

std::string homoclinic_witness_line(const Subshift& shift, Symbol background,
                                    int radius, int margin,
                                    const Pattern& witness) {
  json payload{{"background", shift.alphabet.name(background)},
               {"radius", radius},
               {"margin", margin},
               {"pattern", pattern_json(shift, witness)}};
  return finalize_line(shift, "homoclinic-witness", "local:0",
                       std::move(payload));
}

std::string independence_set_line(const Subshift& shift, const Level& level,
                                  const std::vector<Pattern>& cylinders,
                                  const FiniteSubset& f,
                                  const FiniteSubset& best) {
  json cyls = json::array();
  for (const auto& c : cylinders) cyls.push_back(pattern_json(shift, c));
  json payload{{"cylinders", cyls},
               {"F", set_json(shift, f)},
               {"J", set_json(shift, best)}};
  return finalize_line(shift, "independence-set", format_level(level),
                       std::move(payload));
}

namespace {

VerifyResult fail(const std::string& detail) { return {false, detail}; }

VerifyResult verify_tmp(const Subshift& shift, const Level& level,
                        const json& payload, const BudgetConfig& budget) {
  const Group& g = shift.group;
  FiniteSubset a = set_from_json(shift, payload.at("A"));
  FiniteSubset b = set_from_json(shift, payload.at("B"));
  FiniteSubset w = set_from_json(shift, payload.at("window"));
  Pattern x = pattern_from_json(shift, payload.at("x"));
  Pattern y = pattern_from_json(shift, payload.at("y"));
  if (!a.subset_of(g, b) || !b.subset_of(g, w)) return fail("A <= B <= W fails");
  if (!(x.support == w) || !(y.support == w))
    return fail("patterns are not supported on the window");
  FiniteSubset ring = b.minus(g, a);
  if (!(restrict_to(g, x, ring) == restrict_to(g, y, ring)))
    return fail("x and y disagree on B minus A");
  if (!member_at_level(shift, x, level, budget).member)
    return fail("x is not admissible at the level");
  if (!member_at_level(shift, y, level, budget).member)
    return fail("y is not admissible at the level");
  Pattern z = splice(g, x, y, a);
  if (member_at_level(shift, z, level, budget).member)
    return fail("the splice is admissible: not a counterexample");
  return {true, "tmp counterexample verified"};
}

VerifyResult verify_pair(const Subshift& shift, const Level& level,
                         const json& payload, const BudgetConfig& budget) {
  const Group& g = shift.group;
  FiniteSubset a = set_from_json(shift, payload.at("A"));
  FiniteSubset w = set_from_json(shift, payload.at("window"));
  Pattern p = pattern_from_json(shift, payload.at("p"));
  Pattern q = pattern_from_json(shift, payload.at("q"));
  Pattern ctx = pattern_from_json(shift, payload.at("context"));
  if (!(p.support == a) || !(q.support == a))
    return fail("p and q must be supported on A");
  if (p == q) return fail("p equals q");
  if (!(ctx.support == w.minus(g, a)))
    return fail("context must be supported on W minus A");
  GroupElement site;
  auto gp = try_glue(g, p, ctx, &site);
  auto gq = try_glue(g, q, ctx, &site);
  if (!gp || !gq) return fail("glue conflict");
  if (!member_at_level(shift, *gp, level, budget).member)
    return fail("glue(p, context) is not admissible at the level");
  if (!member_at_level(shift, *gq, level, budget).member)
    return fail("glue(q, context) is not admissible at the level");
  return {true, "pair witness verified"};
}

VerifyResult verify_homoclinic(const Subshift& shift, const json& payload,
                               const BudgetConfig& budget) {
  (void)budget;
  const Group& g = shift.group;
  auto bg_idx =
      shift.alphabet.index_of(payload.at("background").get<std::string>());
  if (!bg_idx) return fail("unknown background symbol");
  int radius = payload.at("radius").get<int>();
  int margin = payload.at("margin").get<int>();
  if (radius < 0 || margin < 0) return fail("bad radius or margin");
  Pattern witness = pattern_from_json(shift, payload.at("pattern"));
  FiniteSubset b_n = g.ball(radius);
  FiniteSubset b_nm = g.ball(radius + margin);
  if (!(witness.support == b_n))
    return fail("witness must be supported on the radius ball");
  Pattern all_bg{b_nm, std::vector<Symbol>(b_nm.size(), *bg_idx)};
  if (!is_locally_admissible(shift, all_bg))
    return fail("background configuration is not admissible");
  bool non_trivial = false;
  for (Symbol v : witness.values) non_trivial |= (v != *bg_idx);
  if (!non_trivial) return fail("witness equals the background");
  FiniteSubset ring = b_nm.minus(g, b_n);
  Pattern over_bg = glue(
      g, witness, Pattern{ring, std::vector<Symbol>(ring.size(), *bg_idx)});
  if (!is_locally_admissible(shift, over_bg))
    return fail("witness over background violates a constraint");
  return {true, "homoclinic witness verified"};
}

VerifyResult verify_independence(const Subshift& shift, const Level& level,
                                 const json& payload,
                                 const BudgetConfig& budget) {
  const Group& g = shift.group;
  std::vector<Pattern> cylinders;
  for (const auto& c : payload.at("cylinders"))
    cylinders.push_back(pattern_from_json(shift, c));
  FiniteSubset f = set_from_json(shift, payload.at("F"));
  FiniteSubset j = set_from_json(shift, payload.at("J"));
  if (!j.subset_of(g, f)) return fail("J is not inside F");
  if (cylinders.empty()) return fail("no cylinders");
  std::size_t k = cylinders.size();
  std::vector<std::size_t> choice(j.size(), 0);
  for (;;) {
    Pattern glued{FiniteSubset{}, {}};
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto merged =
          try_glue(g, glued, translate(g, j[i], cylinders[choice[i]]), nullptr);
      if (!merged) return fail("a choice function has conflicting cylinders");
      glued = *std::move(merged);
    }
    if (!member_at_level(shift, glued, level, budget).member)
      return fail("a choice function is not realized");
    std::size_t pos = 0;
    while (pos < j.size() && ++choice[pos] == k) {
      choice[pos] = 0;
      ++pos;
    }
    if (pos == j.size()) break;
  }
  return {true, "independence set verified"};
}

}  // namespace

VerifyResult verify_certificate_line(const std::string& line,
                                     const BudgetConfig& budget) {
  json cert;
  try {
    cert = json::parse(line);
  } catch (const json::exception& e) {
    return fail(std::string("bad JSON: ") + e.what());
  }
  try {
    json unsigned_cert = cert;
    if (!unsigned_cert.contains("sig")) return fail("missing sig");
    std::string sig = unsigned_cert.at("sig").get<std::string>();
    unsigned_cert.erase("sig");
    if (sha256_hex(unsigned_cert.dump()) != sig)
      return fail("integrity digest mismatch");

    std::string spec_text = cert.at("spec").get<std::string>();
    if (sha256_hex(spec_text) != cert.at("spec_hash").get<std::string>())
      return fail("spec hash mismatch");
    SpecFile sf = parse_spec_text(spec_text);
    Level level = parse_level(cert.at("level").get<std::string>());
    const json& payload = cert.at("payload");
    std::string kind = cert.at("kind").get<std::string>();
    if (kind == "tmp-counterexample")
      return verify_tmp(sf.shift, level, payload, budget);
    if (kind == "pair-witness")
      return verify_pair(sf.shift, level, payload, budget);
    if (kind == "homoclinic-witness")
      return verify_homoclinic(sf.shift, payload, budget);
    if (kind == "independence-set")
      return verify_independence(sf.shift, level, payload, budget);
    return fail("unknown certificate kind '" + kind + "'");
  } catch (const json::exception& e) {
    return fail(std::string("malformed certificate: ") + e.what());
  } catch (const Error& e) {
    return fail(std::string("verification error: ") + e.what());
  }
}

}  // namespace shiftlab

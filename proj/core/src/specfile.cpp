#include "shiftlab/specfile.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace shiftlab {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

namespace {

struct TomlValue {
  enum class Type { string, integer, boolean, array } type;
  std::string str;
  long long integer = 0;
  bool boolean = false;
  std::vector<TomlValue> array;
  int line = 0;
};

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char get() {
    char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }
  void skip_space_and_comments(bool cross_lines) {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        get();
      } else if (c == '\n' && cross_lines) {
        get();
      } else {
        break;
      }
    }
  }
};

TomlValue parse_value(Lexer& lx);

TomlValue parse_array(Lexer& lx) {
  TomlValue v;
  v.type = TomlValue::Type::array;
  v.line = lx.line;
  lx.get();  // '['
  for (;;) {
    lx.skip_space_and_comments(true);
    if (lx.eof()) throw ParseError("unterminated array", v.line);
    if (lx.peek() == ']') {
      lx.get();
      return v;
    }
    v.array.push_back(parse_value(lx));
    lx.skip_space_and_comments(true);
    if (lx.eof()) throw ParseError("unterminated array", v.line);
    if (lx.peek() == ',') {
      lx.get();
    } else if (lx.peek() != ']') {
      throw ParseError("expected ',' or ']' in array", lx.line);
    }
  }
}

TomlValue parse_value(Lexer& lx) {
  lx.skip_space_and_comments(true);
  if (lx.eof()) throw ParseError("expected a value", lx.line);
  char c = lx.peek();
  TomlValue v;
  v.line = lx.line;
  if (c == '[') return parse_array(lx);
  if (c == '"') {
    lx.get();
    v.type = TomlValue::Type::string;
    while (!lx.eof() && lx.peek() != '"') {
      if (lx.peek() == '\n') throw ParseError("unterminated string", v.line);
      v.str += lx.get();
    }
    if (lx.eof()) throw ParseError("unterminated string", v.line);
    lx.get();
    return v;
  }
  std::string token;
  while (!lx.eof() && (std::isalnum(static_cast<unsigned char>(lx.peek())) ||
                       lx.peek() == '-' || lx.peek() == '+' || lx.peek() == '_'))
    token += lx.get();
  if (token == "true" || token == "false") {
    v.type = TomlValue::Type::boolean;
    v.boolean = token == "true";
    return v;
  }
  long long n = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
  if (ec == std::errc() && p == token.data() + token.size()) {
    v.type = TomlValue::Type::integer;
    v.integer = n;
    return v;
  }
  throw ParseError("cannot parse value '" + token + "'", v.line);
}

std::map<std::string, TomlValue> parse_document(const std::string& text) {
  Lexer lx{text};
  std::map<std::string, TomlValue> out;
  for (;;) {
    lx.skip_space_and_comments(true);
    if (lx.eof()) break;
    int key_line = lx.line;
    std::string key;
    while (!lx.eof() && (std::isalnum(static_cast<unsigned char>(lx.peek())) ||
                         lx.peek() == '-' || lx.peek() == '_'))
      key += lx.get();
    if (key.empty())
      throw ParseError("expected a key", lx.line);
    lx.skip_space_and_comments(false);
    if (lx.eof() || lx.peek() != '=')
      throw ParseError("expected '=' after key '" + key + "'", key_line);
    lx.get();
    TomlValue v = parse_value(lx);
    v.line = key_line;
    if (!out.emplace(key, std::move(v)).second)
      throw ParseError("duplicate key '" + key + "'", key_line);
  }
  return out;
}

const TomlValue& expect(const std::map<std::string, TomlValue>& doc,
                        const std::string& key, TomlValue::Type type,
                        const char* what) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing key '") + key + "'", 1);
  if (it->second.type != type)
    throw ParseError("key '" + key + "' must be " + what, it->second.line);
  return it->second;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

SpecFile parse_spec_text(const std::string& text) {
  auto doc = parse_document(text);
  static const std::vector<std::string> known = {
      "name", "group", "alphabet", "gf2", "rule",
      "forbidden", "linear", "predicate", "notes"};
  for (const auto& [key, value] : doc)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("unknown key '" + key + "'", value.line);

  const TomlValue& group_v =
      expect(doc, "group", TomlValue::Type::string, "a string");
  Group group = [&] {
    try {
      return Group::parse_name(group_v.str);
    } catch (const UsageError& e) {
      throw ParseError(e.what(), group_v.line);
    }
  }();

  const TomlValue& alpha_v =
      expect(doc, "alphabet", TomlValue::Type::array, "an array");
  std::vector<std::string> names;
  for (const auto& s : alpha_v.array) {
    if (s.type != TomlValue::Type::string)
      throw ParseError("alphabet entries must be strings", s.line);
    names.push_back(s.str);
  }
  bool gf2 = false;
  if (auto it = doc.find("gf2"); it != doc.end()) {
    if (it->second.type != TomlValue::Type::boolean)
      throw ParseError("gf2 must be true or false", it->second.line);
    gf2 = it->second.boolean;
  }
  Alphabet alphabet = [&] {
    try {
      return Alphabet(names, gf2);
    } catch (const UsageError& e) {
      throw ParseError(e.what(), alpha_v.line);
    }
  }();

  auto parse_site = [&](const TomlValue& v) {
    if (v.type == TomlValue::Type::integer && group.is_lattice() &&
        group.rank() == 1)
      return GroupElement{{static_cast<std::int32_t>(v.integer)}};
    if (v.type != TomlValue::Type::string)
      throw ParseError("sites must be strings", v.line);
    try {
      return group.parse_element(v.str);
    } catch (const UsageError& e) {
      throw ParseError(e.what(), v.line);
    }
  };

  const TomlValue& rule_v =
      expect(doc, "rule", TomlValue::Type::string, "a string");
  Rule rule = ForbiddenPatternsRule{};
  if (rule_v.str == "forbidden") {
    ForbiddenPatternsRule fr;
    if (auto it = doc.find("forbidden"); it != doc.end()) {
      if (it->second.type != TomlValue::Type::array)
        throw ParseError("forbidden must be an array of patterns",
                         it->second.line);
      for (const auto& pat : it->second.array) {
        if (pat.type != TomlValue::Type::array)
          throw ParseError("a forbidden pattern is an array of [site, symbol]",
                           pat.line);
        std::vector<std::pair<GroupElement, Symbol>> entries;
        for (const auto& cell : pat.array) {
          if (cell.type != TomlValue::Type::array || cell.array.size() != 2)
            throw ParseError("a pattern cell is a [site, symbol] pair",
                             cell.line);
          GroupElement site = parse_site(cell.array[0]);
          const TomlValue& sym = cell.array[1];
          if (sym.type != TomlValue::Type::string)
            throw ParseError("symbols must be strings", sym.line);
          auto idx = alphabet.index_of(sym.str);
          if (!idx)
            throw ParseError("unknown symbol '" + sym.str + "'", sym.line);
          entries.emplace_back(std::move(site), *idx);
        }
        try {
          fr.patterns.push_back(make_pattern(group, alphabet, entries));
        } catch (const UsageError& e) {
          throw ParseError(e.what(), pat.line);
        }
      }
    }
    rule = std::move(fr);
  } else if (rule_v.str == "linear-gf2") {
    const TomlValue& lin =
        expect(doc, "linear", TomlValue::Type::array, "an array");
    LinearGf2Rule lr;
    for (const auto& sup : lin.array) {
      if (sup.type != TomlValue::Type::array)
        throw ParseError("a linear support is an array of sites", sup.line);
      std::vector<GroupElement> sites;
      for (const auto& cell : sup.array) sites.push_back(parse_site(cell));
      try {
        FiniteSubset s = FiniteSubset::of(group, sites);
        if (s.size() != sites.size())
          throw UsageError("duplicate site in a linear support");
        lr.supports.push_back(std::move(s));
      } catch (const UsageError& e) {
        throw ParseError(e.what(), sup.line);
      }
    }
    rule = std::move(lr);
  } else if (rule_v.str == "predicate") {
    const TomlValue& pred =
        expect(doc, "predicate", TomlValue::Type::string, "a string");
    try {
      rule = PredicateRule{parse_predicate(pred.str)};
    } catch (const UsageError& e) {
      throw ParseError(e.what(), pred.line);
    }
  } else {
    throw ParseError(
        "rule must be forbidden, linear-gf2 or predicate", rule_v.line);
  }

  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (it->second.type != TomlValue::Type::string)
      throw ParseError("name must be a string", it->second.line);
    name = it->second.str;
  }

  Subshift shift = [&] {
    try {
      return Subshift(std::move(group), std::move(alphabet), std::move(rule),
                      std::move(name));
    } catch (const UsageError& e) {
      throw ParseError(e.what(), rule_v.line);
    }
  }();
  return spec_file_for(shift);
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

std::string serialize_spec(const Subshift& shift) {
  const Group& g = shift.group;
  std::ostringstream out;
  if (!shift.name.empty()) out << "name = " << quoted(shift.name) << "\n";
  out << "group = " << quoted(g.name()) << "\n";
  out << "alphabet = [";
  for (std::size_t i = 0; i < shift.alphabet.size(); ++i) {
    if (i) out << ", ";
    out << quoted(shift.alphabet.name(static_cast<Symbol>(i)));
  }
  out << "]\n";
  if (shift.alphabet.gf2()) out << "gf2 = true\n";

  if (const auto* fp = std::get_if<ForbiddenPatternsRule>(&shift.rule)) {
    out << "rule = \"forbidden\"\n";
    std::vector<Pattern> patterns = fp->patterns;
    std::sort(patterns.begin(), patterns.end(),
              [&g](const Pattern& a, const Pattern& b) {
                return pattern_less(g, a, b);
              });
    out << "forbidden = [";
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (i) out << ", ";
      out << "[";
      for (std::size_t c = 0; c < patterns[i].size(); ++c) {
        if (c) out << ", ";
        out << "[" << quoted(g.format_element(patterns[i].support[c])) << ", "
            << quoted(shift.alphabet.name(patterns[i].values[c])) << "]";
      }
      out << "]";
    }
    out << "]\n";
  } else if (const auto* lin = std::get_if<LinearGf2Rule>(&shift.rule)) {
    out << "rule = \"linear-gf2\"\n";
    std::vector<FiniteSubset> supports = lin->supports;
    std::sort(supports.begin(), supports.end(),
              [&g](const FiniteSubset& a, const FiniteSubset& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                for (std::size_t i = 0; i < a.size(); ++i)
                  if (!(a[i] == b[i])) return g.less(a[i], b[i]);
                return false;
              });
    out << "linear = [";
    for (std::size_t i = 0; i < supports.size(); ++i) {
      if (i) out << ", ";
      out << "[";
      for (std::size_t c = 0; c < supports[i].size(); ++c) {
        if (c) out << ", ";
        out << quoted(g.format_element(supports[i][c]));
      }
      out << "]";
    }
    out << "]\n";
  } else {
    out << "rule = \"predicate\"\n";
    out << "predicate = "
        << quoted(predicate_name(std::get<PredicateRule>(shift.rule).which))
        << "\n";
  }
  return out.str();
}

SpecFile spec_file_for(const Subshift& shift) {
  std::string normalized = serialize_spec(shift);
  std::string hash = sha256_hex(normalized);
  return SpecFile{shift, std::move(normalized), std::move(hash)};
}

FiniteSubset parse_set_descriptor(const Group& group,
                                  const std::string& text) {
  auto fail = [&]() -> FiniteSubset {
    throw UsageError("bad set descriptor '" + text +
                     "' (expected ball:n, box:n or set:[...])");
  };
  if (text.rfind("ball:", 0) == 0) {
    int n = 0;
    std::string tail = text.substr(5);
    auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), n);
    if (ec != std::errc() || p != tail.data() + tail.size() || n < 0)
      return fail();
    return group.ball(n);
  }
  if (text.rfind("box:", 0) == 0) {
    int n = 0;
    std::string tail = text.substr(4);
    auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), n);
    if (ec != std::errc() || p != tail.data() + tail.size() || n < 0)
      return fail();
    return group.folner_window(n);
  }
  if (text.rfind("set:[", 0) == 0 && text.back() == ']') {
    std::string body = text.substr(5, text.size() - 6);
    std::vector<GroupElement> elems;
    std::string cur;
    int depth = 0;
    auto flush = [&]() {
      std::string token = cur;
      cur.clear();
      while (!token.empty() && token.front() == ' ') token.erase(token.begin());
      while (!token.empty() && token.back() == ' ') token.pop_back();
      if (token.empty()) throw UsageError("empty element in set descriptor");
      elems.push_back(group.parse_element(token));
    };
    for (char c : body) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ',' && depth == 0) {
        flush();
      } else {
        cur += c;
      }
    }
    if (!body.empty()) flush();
    return FiniteSubset::of(group, std::move(elems));
  }
  return fail();
}

}  // namespace shiftlab

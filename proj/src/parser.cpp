#include "occt/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace occt {

const char* to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::Lexical: return "lexical";
    case ParseErrorKind::UnknownElement: return "unknown-element";
    case ParseErrorKind::DanglingPath: return "dangling-path";
    case ParseErrorKind::DetectorConsumed: return "detector-consumed";
    case ParseErrorKind::Config: return "config";
  }
  return "?";
}

CircuitParseError::CircuitParseError(ParseErrorKind kind, int line, int col,
                                     const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(col) + ": " + message + " [" +
                         occt::to_string(kind) + "]"),
      kind_(kind),
      line_(line),
      col_(col) {}

namespace {

struct Token {
  std::string text;
  int col = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])) &&
           line[j] != '#')
      ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

class LineParser {
 public:
  LineParser(const std::vector<Token>& toks, int line)
      : toks_(toks), line_(line) {}

  [[noreturn]] void fail(ParseErrorKind kind, int col,
                         const std::string& msg) const {
    throw CircuitParseError(kind, line_, col, msg);
  }

  const Token& next(const char* what) {
    if (pos_ >= toks_.size())
      fail(ParseErrorKind::Lexical, end_col(), std::string("expected ") + what);
    return toks_[pos_++];
  }

  int next_int(const char* what) {
    const Token& t = next(what);
    int value = 0;
    auto [p, ec] = std::from_chars(t.text.data(),
                                   t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || p != t.text.data() + t.text.size())
      fail(ParseErrorKind::Lexical, t.col,
           "expected integer " + std::string(what) + ", got '" + t.text + "'");
    return value;
  }

  double next_double(const char* what) {
    const Token& t = next(what);
    try {
      std::size_t used = 0;
      double v = std::stod(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail(ParseErrorKind::Lexical, t.col,
           "expected number " + std::string(what) + ", got '" + t.text + "'");
    }
  }

  void expect_keyword(const char* kw) {
    const Token& t = next(kw);
    if (t.text != kw)
      fail(ParseErrorKind::Lexical, t.col,
           std::string("expected '") + kw + "', got '" + t.text + "'");
  }

  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek() const { return toks_[pos_]; }
  int end_col() const {
    return toks_.empty() ? 1
                         : toks_.back().col +
                               static_cast<int>(toks_.back().text.size());
  }
  void require_done() {
    if (!done())
      fail(ParseErrorKind::Lexical, peek().col,
           "unexpected trailing token '" + peek().text + "'");
  }

 private:
  const std::vector<Token>& toks_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

Circuit parse_circuit(const std::string& text, const std::string& name) {
  Circuit c;
  c.name = name;

  std::map<std::string, std::vector<int>> aliases;
  std::set<int> produced;
  std::set<int> consumed;
  bool pattern_seen = false;

  struct PendingDetector {
    std::string token;
    int line, col;
  };
  std::vector<PendingDetector> pending_detectors;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<Token> toks = tokenize(raw);
    if (toks.empty()) continue;
    LineParser lp(toks, line_no);
    const Token& head = lp.next("statement");

    if (head.text == "source") {
      Source s;
      s.id = lp.next("source id").text;
      lp.expect_keyword("paths");
      s.path_i = lp.next_int("path");
      s.path_j = lp.next_int("path");
      lp.expect_keyword("alpha");
      s.alpha = lp.next_double("alpha");
      if (!lp.done()) {
        lp.expect_keyword("xplate");
        s.xplate_path = lp.next_int("xplate path");
        if (s.xplate_path != s.path_i && s.xplate_path != s.path_j)
          lp.fail(ParseErrorKind::Config, head.col,
                  "xplate arm is not an emit path");
      }
      lp.require_done();
      if (produced.count(s.path_i) || produced.count(s.path_j) ||
          s.path_i == s.path_j)
        lp.fail(ParseErrorKind::Config, head.col,
                "source paths overlap a previous source");
      produced.insert(s.path_i);
      produced.insert(s.path_j);
      c.sources.push_back(std::move(s));
      continue;
    }

    if (head.text == "element") {
      const Token& kind = lp.next("element kind");
      Element e;
      try {
        if (kind.text == "pbs") {
          int i1 = lp.next_int("input"), i2 = lp.next_int("input");
          lp.expect_keyword("->");
          int t = lp.next_int("output"), r = lp.next_int("output");
          e = make_pbs(i1, i2, t, r);
        } else if (kind.text == "bs") {
          int i1 = lp.next_int("input"), i2 = lp.next_int("input");
          lp.expect_keyword("->");
          int o1 = lp.next_int("output"), o2 = lp.next_int("output");
          e = make_bs(i1, i2, o1, o2);
        } else if (kind.text == "x") {
          e = make_x_plate(lp.next_int("path"));
        } else if (kind.text == "hadamard") {
          e = make_hadamard_plate(lp.next_int("path"));
        } else if (kind.text == "phase") {
          int p = lp.next_int("path");
          e = make_phase(p, lp.next_double("angle"));
        } else if (kind.text == "trap") {
          e = make_trap(lp.next_int("path"));
        } else if (kind.text == "fig6gate") {
          int p = lp.next_int("path");
          lp.expect_keyword("->");
          int a = lp.next_int("output"), b = lp.next_int("output");
          e = make_fig6_gate(p, a, b);
        } else {
          lp.fail(ParseErrorKind::UnknownElement, kind.col,
                  "unknown element '" + kind.text + "'");
        }
      } catch (const ConfigError& err) {
        lp.fail(ParseErrorKind::Config, kind.col, err.what());
      }
      lp.require_done();
      for (int inp : e.input_paths()) {
        if (!produced.count(inp)) {
          int col = head.col;
          for (const Token& t : toks)
            if (t.text == std::to_string(inp)) col = t.col;
          lp.fail(ParseErrorKind::DanglingPath, col,
                  "path " + std::to_string(inp) +
                      " is not produced by any source or prior element");
        }
        produced.erase(inp);
        consumed.insert(inp);
      }
      for (int outp : e.output_paths()) produced.insert(outp);
      c.elements.push_back(std::move(e));
      continue;
    }

    if (head.text == "alias") {
      const Token& nm = lp.next("alias name");
      lp.expect_keyword("=");
      std::vector<int> paths;
      while (!lp.done()) paths.push_back(lp.next_int("path"));
      if (paths.empty())
        lp.fail(ParseErrorKind::Lexical, lp.end_col(), "expected path");
      if (aliases.count(nm.text))
        lp.fail(ParseErrorKind::Config, nm.col,
                "alias '" + nm.text + "' redefined");
      aliases[nm.text] = paths;
      if (paths.size() == 1 && !c.path_alias.count(paths[0]))
        c.path_alias[paths[0]] = nm.text;
      continue;
    }

    if (head.text == "detector") {
      const Token& id = lp.next("mode id");
      lp.require_done();
      pending_detectors.push_back({id.text, line_no, id.col});
      continue;
    }

    if (head.text == "pattern") {
      if (pattern_seen)
        lp.fail(ParseErrorKind::Config, head.col, "pattern redefined");
      pattern_seen = true;
      c.pattern.required.clear();
      c.pattern.others = OthersPolicy::MustBeZero;
      while (!lp.done()) {
        const Token& t = lp.next("pattern entry");
        if (t.text == "others") {
          const Token& pol = lp.next("others policy");
          if (pol.text == "zero")
            c.pattern.others = OthersPolicy::MustBeZero;
          else if (pol.text == "any")
            c.pattern.others = OthersPolicy::DontCare;
          else
            lp.fail(ParseErrorKind::Lexical, pol.col,
                    "expected 'zero' or 'any'");
          lp.require_done();
          break;
        }
        auto eq = t.text.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= t.text.size())
          lp.fail(ParseErrorKind::Lexical, t.col,
                  "expected <mode-id>=<count>, got '" + t.text + "'");
        std::string id = t.text.substr(0, eq);
        int count = 0;
        auto num = t.text.substr(eq + 1);
        auto [p, ec] =
            std::from_chars(num.data(), num.data() + num.size(), count);
        if (ec != std::errc{} || p != num.data() + num.size())
          lp.fail(ParseErrorKind::Lexical, t.col + static_cast<int>(eq) + 1,
                  "expected count, got '" + num + "'");
        if (count <= 0)
          lp.fail(ParseErrorKind::Config, t.col,
                  "pattern count must be positive");
        c.pattern.required.push_back({id, count});
      }
      continue;
    }

    lp.fail(ParseErrorKind::Lexical, head.col,
            "unknown statement '" + head.text + "'");
  }

  // Resolve detectors now that the full element list is known.
  for (const auto& pd : pending_detectors) {
    DetectorGroup g;
    g.name = pd.token;
    auto it = aliases.find(pd.token);
    if (it != aliases.end()) {
      for (int p : it->second) g.members.push_back({p, std::nullopt});
    } else {
      // <path> or <path>:<H|V>
      std::string spec = pd.token;
      std::optional<Pol> pol;
      auto colon = spec.find(':');
      if (colon != std::string::npos) {
        std::string pc = spec.substr(colon + 1);
        if (pc == "H")
          pol = Pol::H;
        else if (pc == "V")
          pol = Pol::V;
        else
          throw CircuitParseError(ParseErrorKind::Lexical, pd.line, pd.col,
                                  "bad polarization '" + pc + "'");
        spec = spec.substr(0, colon);
      }
      int path = 0;
      auto [p, ec] =
          std::from_chars(spec.data(), spec.data() + spec.size(), path);
      if (ec != std::errc{} || p != spec.data() + spec.size())
        throw CircuitParseError(ParseErrorKind::Lexical, pd.line, pd.col,
                                "unknown detector '" + pd.token + "'");
      g.members.push_back({path, pol});
    }
    for (const auto& [path, pol] : g.members) {
      if (!produced.count(path)) {
        if (consumed.count(path))
          throw CircuitParseError(
              ParseErrorKind::DetectorConsumed, pd.line, pd.col,
              "detector path " + std::to_string(path) +
                  " is consumed by an element");
        throw CircuitParseError(ParseErrorKind::DanglingPath, pd.line, pd.col,
                                "detector path " + std::to_string(path) +
                                    " is never produced");
      }
    }
    if (c.find_group(g.name))
      throw CircuitParseError(ParseErrorKind::Config, pd.line, pd.col,
                              "detector '" + g.name + "' redeclared");
    c.detectors.push_back(std::move(g));
  }

  if (!pattern_seen) {
    for (const auto& g : c.detectors) c.pattern.required.push_back({g.name, 1});
    c.pattern.others = OthersPolicy::MustBeZero;
  }
  for (const auto& [nm, count] : c.pattern.required)
    if (!c.find_group(nm))
      throw CircuitParseError(ParseErrorKind::Config, line_no, 1,
                              "pattern references unknown detector '" + nm +
                                  "'");

  try {
    c.validate();
  } catch (const ConfigError& err) {
    throw CircuitParseError(ParseErrorKind::Config, line_no, 1, err.what());
  }
  return c;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string serialize_circuit(const Circuit& c) {
  std::string out;
  out += "# " + c.name;
  if (!c.description.empty()) out += ": " + c.description;
  out += '\n';

  for (const auto& s : c.sources) {
    out += "source " + s.id + " paths " + std::to_string(s.path_i) + " " +
           std::to_string(s.path_j) + " alpha " + fmt_double(s.alpha);
    if (s.xplate_path != 0)
      out += " xplate " + std::to_string(s.xplate_path);
    out += '\n';
  }

  for (const auto& e : c.elements) {
    const auto& p = e.ports;
    if (e.name == "pbs" || e.name == "bs") {
      out += "element " + e.name + " " + std::to_string(p.at(0)) + " " +
             std::to_string(p.at(1)) + " -> " + std::to_string(p.at(2)) +
             " " + std::to_string(p.at(3)) + '\n';
    } else if (e.name == "x" || e.name == "hadamard" || e.name == "trap") {
      out += "element " + e.name + " " + std::to_string(p.at(0)) + '\n';
    } else if (e.name == "phase") {
      out += "element phase " + std::to_string(p.at(0)) + " " +
             fmt_double(e.param) + '\n';
    } else if (e.name == "fig6gate") {
      out += "element fig6gate " + std::to_string(p.at(0)) + " -> " +
             std::to_string(p.at(1)) + " " + std::to_string(p.at(2)) + '\n';
    } else {
      throw ConfigError("serialize: element '" + e.name +
                        "' has no textual form");
    }
  }

  // Render aliases first so paths keep their display names, then detector
  // groups (skipping names the render aliases already cover).
  std::set<std::string> alias_names;
  for (const auto& [path, nm] : c.path_alias) {
    if (!alias_names.insert(nm).second) continue;
    out += "alias " + nm + " = " + std::to_string(path) + '\n';
  }
  for (const auto& g : c.detectors) {
    bool single_pol_member =
        g.members.size() == 1 && g.members[0].second.has_value();
    if (single_pol_member) {
      out += "detector " + std::to_string(g.members[0].first) + ":" +
             std::string(1, pol_char(*g.members[0].second)) + '\n';
      continue;
    }
    if (!alias_names.count(g.name)) {
      alias_names.insert(g.name);
      out += "alias " + g.name + " =";
      for (const auto& [path, pol] : g.members)
        out += " " + std::to_string(path);
      out += '\n';
    }
    out += "detector " + g.name + '\n';
  }

  if (!c.pattern.required.empty()) {
    out += "pattern";
    for (const auto& [nm, count] : c.pattern.required)
      out += " " + nm + "=" + std::to_string(count);
    out += c.pattern.others == OthersPolicy::MustBeZero ? " others zero"
                                                        : " others any";
    out += '\n';
  }
  return out;
}

}  // namespace occt

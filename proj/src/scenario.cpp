#include "bddts/scenario.hpp"

#include <regex>
#include <sstream>

#include "bddts/error.hpp"
#include "bddts/parse.hpp"

namespace bddts {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Step {
  bool when = true;
  std::string gate;
  std::string guard;
  std::string assign;
  std::size_t line = 0;
};

class ScenarioParser {
 public:
  explicit ScenarioParser(std::string_view text) : text_(text) {}

  Bddts run() {
    std::istringstream in{std::string(text_)};
    std::string raw;
    std::string keyword;
    bool inScenario = false;
    while (std::getline(in, raw)) {
      ++line_;
      std::string l = trim(raw);
      if (l.empty() || l[0] == '#') continue;
      indent_ = raw.find_first_not_of(" \t");
      auto sp = l.find_first_of(" \t");
      std::string head = l.substr(0, sp == std::string::npos ? l.size() : sp);
      std::string rest = sp == std::string::npos ? "" : trim(l.substr(sp));
      if (head == "Scenario:") {
        if (inScenario) fail(1, "only one scenario per file");
        inScenario = true;
        continue;
      }
      if (!inScenario) {
        declaration(head, rest);
        continue;
      }
      if (head == "And") {
        if (keyword.empty()) fail(1, "And without a preceding Given/When/Then");
        head = keyword;
      }
      if (head == "Given") {
        if (!steps_.empty() || sawThen_) fail(1, "Given must precede When and Then");
        given_.push_back(term(rest, headLen(l)));
      } else if (head == "When") {
        if (sawThen_) fail(1, "When after Then");
        step(rest, true, headLen(l));
      } else if (head == "Then") {
        sawThen_ = true;
        if (rest.rfind("expect", 0) == 0) {
          expects_.push_back(term(trim(rest.substr(6)), headLen(l) + 7));
        } else {
          if (!expects_.empty()) fail(1, "Then step after expect");
          step(rest, false, headLen(l));
        }
      } else {
        fail(1, "unexpected '" + head + "'");
      }
      keyword = head;
    }
    if (!inScenario) fail(1, "missing 'Scenario:'");
    if (!sawThen_) fail(1, "scenario has no Then clause");
    return build();
  }

 private:
  [[noreturn]] void fail(std::size_t col, const std::string& msg, ErrorCode code = ErrorCode::ParseError) const {
    throw Error(code, "line " + std::to_string(line_) + ", column " + std::to_string(indent_ + col) + ": " + msg);
  }

  static std::size_t headLen(const std::string& l) {
    auto sp = l.find_first_of(" \t");
    return sp == std::string::npos ? l.size() : sp + 2;
  }

  void declaration(const std::string& head, const std::string& rest) {
    if (head == "sort") {
      auto w = words(rest);
      if (w.size() < 2) fail(1, "sort needs a name and a kind");
      Sort s;
      s.name = w[0];
      try {
        if (w[1] == "bool" && w.size() == 2) {
          s.kind = Sort::Kind::Bool;
        } else if (w[1] == "int" && w.size() == 4) {
          s.kind = Sort::Kind::Int;
          s.lo = std::stoll(w[2]);
          s.hi = std::stoll(w[3]);
        } else if (w[1] == "enum" && w.size() >= 3) {
          s.kind = Sort::Kind::Enum;
          s.literals.assign(w.begin() + 2, w.end());
        } else if (w[1] == "list" && w.size() == 4) {
          s.kind = Sort::Kind::List;
          s.element = w[2];
          s.maxLength = std::stoi(w[3]);
        } else {
          fail(6, "malformed sort declaration");
        }
        domain_.add(s);
      } catch (const std::logic_error& e) {
        fail(6, std::string("malformed sort declaration: ") + e.what());
      } catch (const Error& e) {
        fail(6, e.what());
      }
      b_.sorts.push_back(s);
    } else if (head == "model" || head == "context") {
      static const std::regex re(R"(^([A-Za-z_]\w*)\s*:\s*([A-Za-z_]\w*)$)");
      std::smatch m;
      if (!std::regex_match(rest, m, re)) fail(head.size() + 2, "expected 'name : Sort'");
      variable(m[1], m[2], head == "model" ? VarKind::Model : VarKind::Context);
    } else if (head == "input" || head == "output") {
      static const std::regex re(R"(^([A-Za-z_]\w*)\s*\(([^)]*)\)\s*(?:renames\s+(.*))?$)");
      std::smatch m;
      if (!std::regex_match(rest, m, re)) fail(head.size() + 2, "expected 'gate(iv : Sort, ...)'");
      Gate g;
      g.name = m[1];
      g.dir = head == "input" ? Direction::Input : Direction::Output;
      if (b_.findGate(g.name)) fail(head.size() + 2, "duplicate gate " + g.name);
      static const std::regex param(R"(^\s*([A-Za-z_]\w*)\s*:\s*([A-Za-z_]\w*)\s*$)");
      std::string params = m[2];
      if (!trim(params).empty()) {
        std::istringstream ps(params);
        for (std::string p; std::getline(ps, p, ',');) {
          std::smatch pm;
          if (!std::regex_match(p, pm, param)) fail(head.size() + 2, "malformed parameter '" + trim(p) + "'");
          variable(pm[1], pm[2], VarKind::Interaction);
          g.params.push_back(pm[1]);
        }
      }
      if (m[3].matched) {
        static const std::regex ren(R"(^\s*([A-Za-z_]\w*)\s*->\s*([A-Za-z_]\w*)\s*$)");
        std::istringstream rs(m[3].str());
        for (std::string r; std::getline(rs, r, ',');) {
          std::smatch rm;
          if (!std::regex_match(r, rm, ren)) fail(head.size() + 2, "malformed renaming '" + trim(r) + "'");
          g.renames[rm[1]] = rm[2];
        }
      }
      b_.gates.push_back(std::move(g));
    } else {
      fail(1, "unexpected '" + head + "' before 'Scenario:'");
    }
  }

  void variable(const std::string& name, const std::string& sort, VarKind kind) {
    if (!domain_.has(sort)) fail(1, "unknown sort " + sort, ErrorCode::UnknownGateOrVariable);
    if (b_.findVariable(name)) fail(1, "duplicate variable " + name);
    b_.variables.push_back({name, sort, kind});
    scope_[name] = sort;
  }

  Term term(const std::string& text, std::size_t col) {
    try {
      return parseTerm(text, scope_, domain_);
    } catch (const Error& e) {
      fail(col, e.what(), e.code());
    }
  }

  void step(const std::string& rest, bool when, std::size_t col) {
    static const std::regex re(R"(^([!?])\s*([A-Za-z_]\w*)\s*\(([^)]*)\)\s*(.*)$)");
    std::smatch m;
    if (!std::regex_match(rest, m, re)) fail(col, "expected '!gate(args)' or '?gate(args)'");
    Step s;
    s.when = when;
    s.gate = m[2];
    s.line = line_;
    const Gate* g = b_.findGate(s.gate);
    if (!g) fail(col, "unknown gate " + s.gate, ErrorCode::UnknownGateOrVariable);
    const bool out = m[1] == "!";
    if (out != (g->dir == Direction::Output)) fail(col, "gate " + s.gate + " is declared as " + (out ? "input" : "output"));
    std::vector<std::string> args;
    std::istringstream as(m[3].str());
    for (std::string a; std::getline(as, a, ',');) {
      if (!trim(a).empty()) args.push_back(trim(a));
    }
    if (args != g->params) fail(col, "arguments of " + s.gate + " must be its interaction variables", ErrorCode::UnknownGateOrVariable);
    std::string tail = trim(m[4].str());
    static const std::regex setKw(R"((^|\s)set\s)");
    std::smatch sm;
    std::string guardPart = tail;
    if (std::regex_search(tail, sm, setKw)) {
      guardPart = trim(tail.substr(0, sm.position(0)));
      s.assign = trim(tail.substr(sm.position(0) + sm.length(0)));
    }
    if (!guardPart.empty()) {
      if (guardPart.rfind("if", 0) != 0 || (guardPart.size() > 2 && !std::isspace(static_cast<unsigned char>(guardPart[2])))) {
        fail(col, "expected 'if <guard>' or 'set ...' after the gate");
      }
      s.guard = trim(guardPart.substr(2));
      if (s.guard.empty()) fail(col, "empty guard");
    }
    // Validate now so errors carry this line.
    stepSwitch(s, "", "", col);
    steps_.push_back(s);
  }

  Switch stepSwitch(const Step& s, const std::string& from, const std::string& to, std::size_t col) {
    Switch sw;
    sw.from = from;
    sw.to = to;
    sw.gate = s.gate;
    std::size_t saved = line_;
    line_ = s.line;
    SortTable local = scope_;
    sw.guard = s.guard.empty() ? Term::boolean(true) : term(s.guard, col);
    if (!s.assign.empty()) {
      std::istringstream as(s.assign);
      for (std::string a; std::getline(as, a, ';');) {
        if (trim(a).empty()) continue;
        auto pos = a.find(":=");
        if (pos == std::string::npos) fail(col, "expected 'x := e' in set clause");
        std::string lhs = trim(a.substr(0, pos));
        const Variable* v = b_.findVariable(lhs);
        if (!v || v->kind != VarKind::Model) fail(col, "cannot assign " + lhs, ErrorCode::UnknownGateOrVariable);
        sw.assign[VarKey{lhs, 0}] = term(trim(a.substr(pos + 2)), col);
      }
    }
    line_ = saved;
    return sw;
  }

  Bddts build() {
    b_.initial = "0";
    b_.inputGuard = conj(given_);
    b_.locations.push_back({"0", Nature::Open});
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const bool last = i + 1 == steps_.size();
      Nature n = !last && !steps_[i + 1].when ? Nature::Closed : Nature::Open;
      std::string to = std::to_string(i + 1);
      b_.locations.push_back({to, n});
      b_.switches.push_back(stepSwitch(steps_[i], std::to_string(i), to, 1));
    }
    if (!expects_.empty()) {
      if (steps_.empty()) fail(1, "expect needs at least one When or Then step");
      b_.outputGuards[b_.locations.back().name] = conj(expects_);
    }
    return b_;
  }

  std::string_view text_;
  std::size_t line_ = 0;
  std::size_t indent_ = 0;
  Bddts b_;
  DomainSpec domain_;
  SortTable scope_;
  std::vector<Term> given_;
  std::vector<Term> expects_;
  std::vector<Step> steps_;
  bool sawThen_ = false;
};

}  // namespace

Bddts parseScenario(std::string_view text) { return ScenarioParser(text).run(); }

}  // namespace bddts

#include "fixtures.hpp"

#include <fstream>
#include <sstream>

#include "bddts/model_json.hpp"
#include "bddts/parse.hpp"

namespace bddts::testing {

Playground::Playground() {
  Sort small;
  small.name = "Small";
  small.kind = Sort::Kind::Int;
  small.lo = -2;
  small.hi = 2;
  d.add(small);
  Sort mode;
  mode.name = "Mode";
  mode.kind = Sort::Kind::Enum;
  mode.literals = {"A", "B", "C"};
  d.add(mode);
  Sort badge;
  badge.name = "Badge";
  badge.kind = Sort::Kind::Int;
  badge.lo = 1233;
  badge.hi = 1235;
  d.add(badge);
  Sort badges;
  badges.name = "Badges";
  badges.kind = Sort::Kind::List;
  badges.element = "Badge";
  badges.maxLength = 2;
  d.add(badges);
  vars = {{"x", "Small"}, {"y", "Small"}, {"p", kBoolSort}, {"q", kBoolSort},
          {"m", "Mode"},  {"b", "Badge"}, {"xs", "Badges"}};
}

Term Playground::operator()(const std::string& text) const { return parseTerm(text, vars, d); }

Term Playground::var(const std::string& name, int time) const {
  const std::string& sort = vars.at(name);
  return Term::variable({name, time}, sort, d.typeOf(sort));
}

Value Playground::val(const std::string& text, const std::string& sort) const { return parseValue(text, sort, d); }

namespace {

Term randomOf(Rng& rng, const Playground& pg, const std::string& sort, int depth, int maxTime);

Term leafOf(Rng& rng, const Playground& pg, const std::string& sort, int maxTime) {
  std::vector<std::string> names;
  for (const auto& [n, s] : pg.vars) {
    if (s == sort) names.push_back(n);
  }
  if (!names.empty() && chance(rng, 0.7)) return pg.var(pick(rng, names), between(rng, 0, maxTime));
  return Term::constant(pick(rng, pg.d.universe(sort)), pg.d.typeOf(sort));
}

Term randomOf(Rng& rng, const Playground& pg, const std::string& sort, int depth, int maxTime) {
  if (sort == "Small" && depth > 0 && chance(rng, 0.3)) {
    return Term::apply(chance(rng, 0.5) ? Op::Add : Op::Sub,
                       {randomOf(rng, pg, "Small", depth - 1, maxTime), leafOf(rng, pg, "Small", maxTime)});
  }
  if (sort == "Badges" && chance(rng, 0.3)) {
    std::vector<Term> items;
    for (int i = between(rng, 0, 2); i > 0; --i) items.push_back(leafOf(rng, pg, "Badge", maxTime));
    if (!items.empty()) return Term::apply(Op::ListLit, items);
  }
  return leafOf(rng, pg, sort, maxTime);
}

}  // namespace

Term randomBoolTerm(Rng& rng, const Playground& pg, int depth, int maxTime) {
  int k = between(rng, 0, depth > 0 ? 7 : 3);
  switch (k) {
    case 0: return leafOf(rng, pg, kBoolSort, maxTime);
    case 1: {
      static const Op cmp[] = {Op::Eq, Op::Ne, Op::Lt, Op::Le, Op::Gt, Op::Ge};
      return Term::apply(cmp[between(rng, 0, 5)],
                         {randomOf(rng, pg, "Small", 1, maxTime), randomOf(rng, pg, "Small", 1, maxTime)});
    }
    case 2: return Term::apply(chance(rng, 0.5) ? Op::Eq : Op::Ne,
                               {leafOf(rng, pg, "Mode", maxTime), leafOf(rng, pg, "Mode", maxTime)});
    case 3: return Term::apply(Op::Contains,
                               {randomOf(rng, pg, "Badges", 0, maxTime), leafOf(rng, pg, "Badge", maxTime)});
    case 4: return Term::apply(Op::Not, {randomBoolTerm(rng, pg, depth - 1, maxTime)});
    case 5:
    case 6: {
      std::vector<Term> args;
      for (int i = between(rng, 2, 3); i > 0; --i) args.push_back(randomBoolTerm(rng, pg, depth - 1, maxTime));
      return Term::apply(k == 5 ? Op::And : Op::Or, args);
    }
    default:
      return Term::apply(Op::Implies,
                         {randomBoolTerm(rng, pg, depth - 1, maxTime), randomBoolTerm(rng, pg, depth - 1, maxTime)});
  }
}

std::vector<Valuation> allValuations(const std::vector<VarInfo>& vs, const DomainSpec& d) {
  std::vector<Valuation> out{{}};
  for (const auto& v : vs) {
    std::vector<Valuation> next;
    for (const auto& partial : out) {
      for (const auto& x : d.universe(v.sort)) {
        Valuation e = partial;
        e[v.key] = x;
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<VarInfo> varList(const Term& a, const Term& b) {
  std::set<VarInfo> s = vars(a);
  collectVars(b, s);
  return {s.begin(), s.end()};
}

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Bddts dataModel(const std::string& file) {
  return modelFromJson(readJsonFile(std::string(BDDTS_DATA_DIR) + "/" + file));
}

Bddts miniModel(const std::string& body) {
  const std::string head = R"({
    "sorts": [{"name": "N", "kind": "int", "lo": 0, "hi": 2}],
    "variables": [
      {"name": "n", "sort": "N", "kind": "model"},
      {"name": "f", "sort": "Bool", "kind": "model"},
      {"name": "c", "sort": "N", "kind": "context"},
      {"name": "o", "sort": "N", "kind": "interaction"},
      {"name": "i", "sort": "N", "kind": "interaction"}
    ],
    "gates": [
      {"name": "out", "dir": "output", "params": ["o"], "renames": {"c": "o"}},
      {"name": "in", "dir": "input", "params": ["i"]}
    ],)";
  return modelFromJson(Json::parse(head + body + "}"));
}

}  // namespace bddts::testing

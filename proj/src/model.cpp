#include "bddts/model.hpp"

#include <algorithm>

#include "bddts/error.hpp"

namespace bddts {

bool operator==(const Switch& a, const Switch& b) {
  return a.from == b.from && a.gate == b.gate && a.guard == b.guard && a.assign == b.assign &&
         a.to == b.to;
}

bool operator==(const Bddts& a, const Bddts& b) {
  return a.sorts == b.sorts && a.variables == b.variables && a.gates == b.gates &&
         a.locations == b.locations && a.switches == b.switches && a.initial == b.initial &&
         a.inputGuard == b.inputGuard && a.outputGuards == b.outputGuards &&
         a.saturated == b.saturated;
}

DomainSpec Bddts::domain() const {
  DomainSpec d;
  for (const auto& s : sorts) d.add(s);
  return d;
}

SortTable Bddts::sortTable() const {
  SortTable t;
  for (const auto& v : variables) t[v.name] = v.sort;
  return t;
}

const Location* Bddts::findLocation(const std::string& name) const {
  for (const auto& l : locations) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

const Location& Bddts::location(const std::string& name) const {
  if (const auto* l = findLocation(name)) return *l;
  throw Error(ErrorCode::UnknownLocation, "unknown location '" + name + "'");
}

const Gate* Bddts::findGate(const std::string& name) const {
  for (const auto& g : gates) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

const Gate& Bddts::gate(const std::string& name) const {
  if (const auto* g = findGate(name)) return *g;
  throw Error(ErrorCode::UnknownGateOrVariable, "unknown gate '" + name + "'");
}

const Variable* Bddts::findVariable(const std::string& name) const {
  for (const auto& v : variables) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

bool Bddts::isSink(const std::string& loc) const {
  return std::none_of(switches.begin(), switches.end(),
                      [&](const Switch& s) { return s.from == loc; });
}

std::vector<Variable> Bddts::stateVariables() const {
  std::vector<Variable> out;
  for (const auto& v : variables) {
    if (v.kind != VarKind::Interaction) out.push_back(v);
  }
  return out;
}

std::set<std::string> Bddts::modelVariables() const {
  std::set<std::string> out;
  for (const auto& v : variables) {
    if (v.kind == VarKind::Model) out.insert(v.name);
  }
  return out;
}

std::set<std::string> Bddts::contextVariables() const {
  std::set<std::string> out;
  for (const auto& v : variables) {
    if (v.kind == VarKind::Context) out.insert(v.name);
  }
  return out;
}

std::string ValidationReport::str() const {
  std::string s;
  for (const auto& v : violations) s += v.kind + ": " + v.message + "\n";
  return s;
}

namespace {

std::string switchName(const Bddts& b, std::size_t i) {
  const Switch& s = b.switches[i];
  return "switch #" + std::to_string(i) + " (" + s.from + " -" + s.gate + "-> " + s.to + ")";
}

}  // namespace

ValidationReport validate(const Bddts& b, const DomainSpec& d) {
  ValidationReport r;
  auto add = [&](const std::string& kind, const std::string& msg) {
    r.violations.push_back({kind, msg});
  };

  std::set<std::string> names;
  std::set<std::string> state;
  std::map<std::string, const Variable*> byName;
  for (const auto& v : b.variables) {
    if (!names.insert(v.name).second) add("duplicate-variable", v.name);
    if (!d.has(v.sort)) add("unknown-sort", v.name + " : " + v.sort);
    if (v.kind != VarKind::Interaction) state.insert(v.name);
    byName[v.name] = &v;
  }

  std::set<std::string> gateNames;
  for (const auto& g : b.gates) {
    if (!gateNames.insert(g.name).second) add("duplicate-gate", g.name);
    std::set<std::string> seen;
    for (const auto& p : g.params) {
      auto it = byName.find(p);
      if (it == byName.end() || it->second->kind != VarKind::Interaction) {
        add("gate-arity", g.name + ": parameter " + p + " is not an interaction variable");
      }
      if (!seen.insert(p).second) add("gate-arity", g.name + ": repeated parameter " + p);
    }
    for (const auto& [cv, iv] : g.renames) {
      auto c = byName.find(cv);
      auto i = byName.find(iv);
      if (c == byName.end() || c->second->kind != VarKind::Context) {
        add("renaming", g.name + ": " + cv + " is not a context variable");
      } else if (std::find(g.params.begin(), g.params.end(), iv) == g.params.end()) {
        add("renaming", g.name + ": " + iv + " is not a parameter of the gate");
      } else if (i != byName.end() && i->second->sort != c->second->sort) {
        add("renaming", g.name + ": " + cv + " and " + iv + " have different sorts");
      }
    }
  }

  std::set<std::string> locNames;
  for (const auto& l : b.locations) {
    if (!locNames.insert(l.name).second) add("duplicate-location", l.name);
  }
  if (const auto* il = b.findLocation(b.initial); !il) {
    add("initial", "initial location '" + b.initial + "' does not exist");
  } else if (il->nature != Nature::Open) {
    add("initial", "initial must be open");
  }

  auto scoped = [&](const Term& t, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& v : vars(t)) {
      if (v.key.time != 0 || !allowed.count(v.key.name)) {
        add("scope", where + ": variable " + v.key.str() + " out of scope");
      }
    }
  };

  if (b.inputGuard.type().kind != Type::Kind::Bool) add("scope", "input guard is not boolean");
  scoped(b.inputGuard, state, "input guard");
  for (const auto& [l, og] : b.outputGuards) {
    if (!locNames.count(l)) add("unknown-location", "output guard on " + l);
    if (og.type().kind != Type::Kind::Bool) add("scope", "output guard of " + l + " is not boolean");
    scoped(og, state, "output guard of " + l);
  }

  const auto mv = b.modelVariables();
  bool structural = true;
  for (std::size_t i = 0; i < b.switches.size(); ++i) {
    const Switch& s = b.switches[i];
    const std::string name = switchName(b, i);
    if (!locNames.count(s.from) || !locNames.count(s.to)) {
      add("unknown-location", name);
      structural = false;
    }
    const Gate* g = b.findGate(s.gate);
    if (!g) {
      add("unknown-gate", name);
      structural = false;
      continue;
    }
    std::set<std::string> allowed = state;
    allowed.insert(g->params.begin(), g->params.end());
    if (s.guard.type().kind != Type::Kind::Bool) add("scope", name + ": guard is not boolean");
    scoped(s.guard, allowed, name + " guard");
    for (const auto& [k, e] : s.assign) {
      if (k.time != 0 || !mv.count(k.name)) {
        add("scope", name + ": assigns non-model variable " + k.str());
        continue;
      }
      if (!typesMatch(d.typeOf(byName[k.name]->sort), e.type())) {
        add("scope", name + ": " + k.str() + " := " + e.str() + " changes sort");
      }
      scoped(e, allowed, name + " assignment");
    }
  }

  if (structural) {
    auto active = activeVars(b);
    for (std::size_t i = 0; i < b.switches.size(); ++i) {
      const Switch& s = b.switches[i];
      for (const auto& v : active[s.to]) {
        if (mv.count(v) && !s.assign.count(VarKey{v, 0})) {
          add("coverage", switchName(b, i) + " leaves active variable " + v + " of " + s.to +
                              " unassigned");
        }
      }
    }
  }

  for (std::size_t i = 0; i < b.switches.size(); ++i) {
    for (std::size_t j = i + 1; j < b.switches.size(); ++j) {
      const Switch& s = b.switches[i];
      const Switch& t = b.switches[j];
      if (s.from != t.from || s.gate != t.gate) continue;
      try {
        if (auto w = findModel(conj({s.guard, t.guard}), d)) {
          add("nondeterminism", switchName(b, i) + " and " + switchName(b, j) + " overlap at " +
                                    str(*w));
        }
      } catch (const Error& e) {
        add("nondeterminism", switchName(b, i) + " and " + switchName(b, j) + ": " + e.what());
      }
    }
  }
  return r;
}

std::map<std::string, std::set<std::string>> activeVars(const Bddts& b) {
  std::set<std::string> state;
  for (const auto& v : b.stateVariables()) state.insert(v.name);
  std::map<std::string, std::set<std::string>> act;
  for (const auto& l : b.locations) {
    auto& s = act[l.name];
    if (auto it = b.outputGuards.find(l.name); it != b.outputGuards.end()) {
      for (const auto& v : vars(it->second)) {
        if (state.count(v.key.name)) s.insert(v.key.name);
      }
    }
  }
  std::vector<std::set<std::string>> guardVars;
  for (const auto& sw : b.switches) {
    std::set<std::string> gv;
    for (const auto& v : vars(sw.guard)) {
      if (state.count(v.key.name)) gv.insert(v.key.name);
    }
    guardVars.push_back(std::move(gv));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < b.switches.size(); ++i) {
      const Switch& sw = b.switches[i];
      auto& src = act[sw.from];
      std::size_t before = src.size();
      src.insert(guardVars[i].begin(), guardVars[i].end());
      const auto& tgt = act[sw.to];
      src.insert(tgt.begin(), tgt.end());
      changed = changed || src.size() != before;
    }
  }
  return act;
}

std::set<std::string> activeVars(const Bddts& b, const std::string& loc) {
  b.location(loc);
  return activeVars(b)[loc];
}

std::vector<Interaction> interactionsOf(const std::vector<Gate>& gates) {
  std::vector<Interaction> out;
  for (const auto& g : gates) out.push_back({g.name, g.dir, g.params});
  return out;
}

std::vector<const Switch*> outgoing(const Bddts& b, const std::string& loc, const std::string& gate) {
  std::vector<const Switch*> out;
  for (const auto& s : b.switches) {
    if (s.from == loc && s.gate == gate) out.push_back(&s);
  }
  return out;
}

std::vector<const Switch*> outgoing(const Bddts& b, const std::string& loc) {
  std::vector<const Switch*> out;
  for (const auto& s : b.switches) {
    if (s.from == loc) out.push_back(&s);
  }
  return out;
}

bool isOutputRich(const Bddts& b) {
  if (b.isGoal(b.initial)) return false;
  for (const auto& s : b.switches) {
    if (!b.isGoal(s.to)) continue;
    const Gate* g = b.findGate(s.gate);
    const Location* l = b.findLocation(s.from);
    if (!g || !l || g->dir != Direction::Output || l->nature != Nature::Closed) return false;
  }
  return true;
}

bool compatibleModels(const Bddts& b1, const Bddts& b2) {
  auto sorted = [](auto xs) {
    std::sort(xs.begin(), xs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return xs;
  };
  if (sorted(b1.variables) != sorted(b2.variables)) return false;
  auto g1 = sorted(b1.gates), g2 = sorted(b2.gates);
  if (g1.size() != g2.size()) return false;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    if (g1[i].name != g2[i].name || g1[i].dir != g2[i].dir || g1[i].params != g2[i].params) {
      return false;
    }
  }
  try {
    DomainSpec d = b1.domain();
    for (const auto& s : b2.sorts) d.add(s);
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace bddts

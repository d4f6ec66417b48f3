#include "bddts/concrete.hpp"

#include <deque>
#include <random>

#include "bddts/error.hpp"
#include "bddts/symbolic.hpp"
#include "compiled.hpp"

namespace bddts {

std::string GateValue::str() const {
  std::string s = gate + "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += values[i].str();
  }
  return s + ")";
}

std::vector<GateValue> gateValues(const Gate& g, const Bddts& b, const DomainSpec& d) {
  std::set<VarInfo> vs;
  for (const auto& p : g.params) vs.insert({{p, 0}, b.findVariable(p)->sort});
  detail::Space space(vs, d);
  space.size(d);
  std::vector<GateValue> out;
  space.forEach([&](const std::vector<Value>& env) {
    GateValue u{g.name, {}};
    for (const auto& p : g.params) u.values.push_back(env[space.slots.at({p, 0})]);
    out.push_back(std::move(u));
    return true;
  });
  return out;
}

Valuation gateValuation(const Bddts& b, const GateValue& u) {
  const Gate& g = b.gate(u.gate);
  if (g.params.size() != u.values.size()) {
    throw Error(ErrorCode::GateMismatch, "gate " + g.name + " takes " + std::to_string(g.params.size()) + " values");
  }
  Valuation v;
  for (std::size_t i = 0; i < g.params.size(); ++i) v.emplace(VarKey{g.params[i], 0}, u.values[i]);
  return v;
}

Valuation gateSeqValuation(const Bddts& b, const GateSeq& w) {
  Valuation v;
  for (const auto& u : w) {
    v = upshift(v);
    for (auto& [k, x] : gateValuation(b, u)) v.insert_or_assign(k, x);
  }
  return v;
}

Valuation hatValuation(const Bddts& b, const GateSeq& xi) {
  if (xi.empty()) throw Error(ErrorCode::RenamingUndefined, "hat valuation of the empty sequence");
  Valuation v = gateSeqValuation(b, xi);
  for (const auto& [cv, iv] : b.gate(xi.back().gate).renames) v.insert_or_assign(VarKey{cv, 0}, v.at({iv, 0}));
  return v;
}

DerivedSts deriveSts(const Bddts& b, const Valuation& ini) {
  if (!isOutputRich(b)) throw Error(ErrorCode::NotOutputRich, "model is not output-rich");
  groundIni(b, ini);
  const auto cvs = b.contextVariables();
  const auto sorts = b.sortTable();
  DomainSpec d = b.domain();
  DerivedSts s{b, {}};
  for (const auto& v : b.stateVariables()) s.ini.emplace(VarKey{v.name, 0}, ini.at({v.name, 0}));
  for (auto& t : s.model.switches) {
    auto it = b.outputGuards.find(t.to);
    if (it == b.outputGuards.end()) continue;
    const Gate& g = b.gate(t.gate);
    Assignment rho = t.assign;
    for (const auto& v : vars(it->second)) {
      if (!cvs.count(v.key.name)) continue;
      auto r = g.renames.find(v.key.name);
      if (r == g.renames.end()) {
        throw Error(ErrorCode::RenamingNotDerivable,
                    "output guard of " + t.to + " reads " + v.key.name + " but gate " + g.name + " does not rename it");
      }
      rho[v.key] = Term::variable({r->second, 0}, sorts.at(r->second), d.typeOf(sorts.at(r->second)));
    }
    t.guard = conj({t.guard, substitute(it->second, rho)});
  }
  return s;
}

std::vector<const LtsTransition*> Lts::from(std::size_t q) const {
  std::vector<const LtsTransition*> out;
  for (const auto& t : transitions) {
    if (t.from == q) out.push_back(&t);
  }
  return out;
}

namespace {

struct CompiledSwitch {
  const Switch* sw;
  std::size_t index;
  detail::Compiled guard;
  std::vector<std::pair<VarKey, detail::Compiled>> assign;
};

}  // namespace

Lts interpret(const DerivedSts& s, const DomainSpec& d, int maxDepth) {
  const Bddts& b = s.model;
  std::vector<VarKey> stateKeys;
  for (const auto& v : b.stateVariables()) stateKeys.push_back({v.name, 0});

  // Per gate: slot layout is V followed by the gate's parameters.
  std::map<std::string, std::map<VarKey, int>> slots;
  std::map<std::string, std::vector<GateValue>> values;
  for (const auto& g : b.gates) {
    auto& m = slots[g.name];
    for (const auto& k : stateKeys) m.emplace(k, static_cast<int>(m.size()));
    for (const auto& p : g.params) m.emplace(VarKey{p, 0}, static_cast<int>(m.size()));
    values[g.name] = gateValues(g, b, d);
  }
  std::map<std::string, std::vector<CompiledSwitch>> out;
  for (std::size_t i = 0; i < b.switches.size(); ++i) {
    const Switch& sw = b.switches[i];
    CompiledSwitch c{&sw, i, detail::Compiled(sw.guard, slots[sw.gate]), {}};
    for (const auto& [k, e] : sw.assign) c.assign.emplace_back(k, detail::Compiled(e, slots[sw.gate]));
    out[sw.from].push_back(std::move(c));
  }

  Lts lts;
  std::map<std::pair<std::string, Valuation>, std::size_t> seen;
  auto add = [&](const std::string& loc, Valuation v, int depth) {
    auto key = std::make_pair(loc, v);
    auto [it, fresh] = seen.emplace(key, lts.states.size());
    if (fresh) {
      lts.states.push_back({loc, std::move(v)});
      lts.depth.push_back(depth);
      lts.expanded.push_back(false);
    }
    return it->second;
  };
  add(b.initial, s.ini, 0);
  for (std::size_t q = 0; q < lts.states.size(); ++q) {
    if (lts.depth[q] >= maxDepth) continue;
    lts.expanded[q] = true;
    const std::string loc = lts.states[q].location;
    const Valuation cur = lts.states[q].values;
    std::vector<Value> env;
    for (const auto& k : stateKeys) env.push_back(cur.at(k));
    const std::size_t base = env.size();
    for (const auto& c : out[loc]) {
      const Gate& g = b.gate(c.sw->gate);
      for (const auto& u : values[g.name]) {
        env.resize(base);
        env.insert(env.end(), u.values.begin(), u.values.end());
        if (!c.guard.test(env)) continue;
        Valuation next = cur;
        for (const auto& [k, e] : c.assign) next[k] = e.eval(env);
        std::size_t to = add(c.sw->to, std::move(next), lts.depth[q] + 1);
        lts.transitions.push_back({q, u, to, c.index});
      }
    }
  }
  return lts;
}

std::optional<std::size_t> TestCase::step(std::size_t q, const GateValue& u) const {
  auto it = index_.find({q, u});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<const TestCase::Transition*> TestCase::from(std::size_t q) const {
  std::vector<const Transition*> out;
  for (const auto& t : transitions) {
    if (t.from == q) out.push_back(&t);
  }
  return out;
}

void TestCase::reindex() {
  index_.clear();
  for (const auto& t : transitions) index_[{t.from, t.label}] = t.to;
}

TestCase deriveTestCase(const Bddts& b, const Valuation& ini, const DomainSpec& d, int maxDepth) {
  groundIni(b, ini);
  if (!holds(b.inputGuard, ini)) {
    throw Error(ErrorCode::IniViolatesIG, "ini " + str(ini) + " violates the input guard " + b.inputGuard.str());
  }
  DerivedSts s = deriveSts(b, ini);
  Lts lts = interpret(s, d, maxDepth);

  TestCase tc;
  tc.gates = b.gates;
  for (std::size_t q = 0; q < lts.states.size(); ++q) {
    const auto& st = lts.states[q];
    tc.states.push_back({st.location, b.location(st.location).nature, st.values, lts.expanded[q]});
  }
  for (const auto& t : lts.transitions) tc.transitions.push_back({t.from, t.label, t.to});
  tc.failState = tc.states.size();
  tc.states.push_back({"q_f", Nature::Closed, {}, true});

  std::set<std::size_t> hasTransition;
  std::set<std::pair<std::size_t, GateValue>> enabled;
  for (const auto& t : lts.transitions) {
    hasTransition.insert(t.from);
    enabled.insert({t.from, t.label});
  }
  for (std::size_t q = 0; q < lts.states.size(); ++q) {
    if (!lts.expanded[q]) continue;
    const auto nature = tc.states[q].nature;
    if (nature == Nature::Open && !hasTransition.count(q)) tc.pass.insert(q);
    if (nature != Nature::Closed) continue;
    for (const auto& g : b.gates) {
      if (g.dir != Direction::Output) continue;
      for (const auto& u : gateValues(g, b, d)) {
        if (!enabled.count({q, u})) tc.transitions.push_back({q, u, tc.failState});
      }
    }
  }
  tc.reindex();
  return tc;
}

const char* verdictName(VerdictKind k) {
  switch (k) {
    case VerdictKind::Pass: return "pass";
    case VerdictKind::Fail: return "fail";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict verdict(const TestCase& tc, const GateSeq& w) {
  std::size_t q = tc.initial;
  if (tc.pass.count(q)) return {VerdictKind::Pass, 0, false};
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!tc.states[q].expanded) return {VerdictKind::Inconclusive, i, true};
    auto next = tc.step(q, w[i]);
    if (!next) return {VerdictKind::Inconclusive, i, false};
    q = *next;
    if (q == tc.failState) return {VerdictKind::Fail, i + 1, false};
    if (tc.pass.count(q)) return {VerdictKind::Pass, i + 1, false};
  }
  return {VerdictKind::Inconclusive, w.size(), false};
}

namespace {

bool sameGates(const std::vector<Gate>& a, const Bddts& b) {
  if (a.size() != b.gates.size()) return false;
  for (const auto& g : a) {
    const Gate* h = b.findGate(g.name);
    if (!h || h->dir != g.dir || h->params.size() != g.params.size()) return false;
  }
  return true;
}

}  // namespace

RunResult runAgainstSut(const TestCase& tc, const Sut& sut, const DomainSpec& d, std::uint64_t seed,
                        int maxSteps) {
  if (!sameGates(tc.gates, sut.model)) throw Error(ErrorCode::GateMismatch, "SuT gates differ from the test case");
  Lts impl = interpret(deriveSts(sut.model, sut.ini), d, maxSteps);
  std::map<std::size_t, std::map<GateValue, std::size_t>> moves;
  for (const auto& t : impl.transitions) moves[t.from].emplace(t.label, t.to);

  std::map<std::string, Direction> dir;
  for (const auto& g : tc.gates) dir[g.name] = g.dir;

  std::mt19937_64 rng(seed);
  RunResult r;
  std::size_t q = tc.initial;
  std::size_t s = 0;
  auto done = [&](VerdictKind k, const std::string& why, bool truncated = false) {
    r.verdict = {k, r.trace.size(), truncated};
    r.transcript.push_back(std::string(verdictName(k)) + ": " + why);
    return r;
  };
  if (tc.pass.count(q)) return done(VerdictKind::Pass, "initial state is a pass state");
  for (int stepNo = 0; stepNo < maxSteps; ++stepNo) {
    if (!tc.states[q].expanded) {
      return done(VerdictKind::Inconclusive, "test case depth bound reached", true);
    }
    std::vector<GateValue> options;
    for (const auto& [u, _] : moves[s]) {
      if (dir.at(u.gate) == Direction::Output || tc.step(q, u)) options.push_back(u);
    }
    if (options.empty()) return done(VerdictKind::Inconclusive, "no interaction possible");
    const GateValue& u = options[rng() % options.size()];
    const bool isOut = dir.at(u.gate) == Direction::Output;
    r.trace.push_back(u);
    s = moves[s].at(u);
    auto next = tc.step(q, u);
    std::string line = "step " + std::to_string(stepNo + 1) + ": " + (isOut ? "!" : "?") + u.str();
    if (!next) {
      r.transcript.push_back(line);
      return done(VerdictKind::Inconclusive, "test case does not specify " + u.str());
    }
    line += "  [" + tc.states[q].location + " -> " + tc.states[*next].location + "]";
    r.transcript.push_back(line);
    q = *next;
    if (q == tc.failState) return done(VerdictKind::Fail, "unspecified output " + u.str());
    if (tc.pass.count(q)) return done(VerdictKind::Pass, "reached pass state at " + tc.states[q].location);
  }
  r.budgetExceeded = true;
  return done(VerdictKind::Inconclusive, "step budget of " + std::to_string(maxSteps) + " exhausted");
}

}  // namespace bddts

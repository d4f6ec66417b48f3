#include "generator.hpp"

#include "bddts/error.hpp"
#include "bddts/parse.hpp"

namespace bddts::testing {

namespace {

struct Scope {
  DomainSpec d;
  std::map<std::string, std::string> sortOf;

  explicit Scope(const Signature& sig) {
    for (const auto& s : sig.sorts) d.add(s);
    for (const auto& v : sig.variables) sortOf[v.name] = v.sort;
  }

  bool isInt(const std::string& v) const { return d.sort(sortOf.at(v)).kind == Sort::Kind::Int; }
  bool isBool(const std::string& v) const { return sortOf.at(v) == kBoolSort; }

  std::string literal(Rng& rng, const std::string& v) const {
    return pick(rng, d.universe(sortOf.at(v))).str();
  }

  // A boolean atom over the given variables.
  std::string atom(Rng& rng, const std::vector<std::string>& pool) const {
    const std::string& x = pick(rng, pool);
    std::vector<std::string> same, ints;
    for (const auto& y : pool) {
      if (y != x && sortOf.at(y) == sortOf.at(x)) same.push_back(y);
      if (y != x && isInt(y)) ints.push_back(y);
    }
    int kind = between(rng, 0, 3);
    if (kind == 1 && !same.empty()) return x + " == " + pick(rng, same);
    if (kind == 2 && isInt(x) && !ints.empty()) return x + " < " + pick(rng, ints);
    if (kind == 3 && isInt(x)) return x + " + 1 >= " + literal(rng, x);
    if (isBool(x)) return chance(rng, 0.5) ? x : "!" + x;
    return x + (chance(rng, 0.7) ? " == " : " != ") + literal(rng, x);
  }
};

Term parse(const std::string& text, const Scope& s) { return parseTerm(text, s.sortOf, s.d); }

}  // namespace

Signature randomSignature(Rng& rng, const GenOptions& opt) {
  Signature sig;
  Sort small;
  small.name = "Small";
  small.kind = Sort::Kind::Int;
  small.lo = 0;
  small.hi = between(rng, 1, 2);
  sig.sorts.push_back(small);
  std::vector<std::string> sortNames{"Small", kBoolSort};
  if (chance(rng, 0.5)) {
    Sort mode;
    mode.name = "Mode";
    mode.kind = Sort::Kind::Enum;
    mode.literals = {"A", "B"};
    if (chance(rng, 0.5)) mode.literals.push_back("C");
    sig.sorts.push_back(mode);
    sortNames.push_back("Mode");
  }

  sig.variables.push_back({"m0", "Small", VarKind::Model});
  if (chance(rng, 0.5)) sig.variables.push_back({"m1", kBoolSort, VarKind::Model});
  std::string ctxSort;
  if (chance(rng, 0.6)) {
    ctxSort = sortNames.size() > 2 && chance(rng, 0.5) ? "Mode" : "Small";
    sig.variables.push_back({"c", ctxSort, VarKind::Context});
  }

  int gates = between(rng, 1, opt.maxGates);
  for (int i = 0; i < gates; ++i) {
    Gate g;
    g.name = "g" + std::to_string(i);
    g.dir = opt.allowInputs && chance(rng, 0.35) ? Direction::Input : Direction::Output;
    if (opt.requireOutputGate && i == gates - 1) {
      bool any = g.dir == Direction::Output;
      for (const auto& h : sig.gates) any = any || h.dir == Direction::Output;
      if (!any) g.dir = Direction::Output;
    }
    int params = between(rng, 1, opt.maxParams);
    for (int k = 0; k < params; ++k) {
      std::string iv = g.name + "_" + std::to_string(k);
      std::string sort = pick(rng, sortNames);
      if (k == 0 && g.dir == Direction::Output && !ctxSort.empty()) {
        sort = ctxSort;
        g.renames["c"] = iv;
      }
      g.params.push_back(iv);
      sig.variables.push_back({iv, sort, VarKind::Interaction});
    }
    sig.gates.push_back(g);
  }

  Scope scope(sig);
  for (const auto& g : sig.gates) {
    auto& t = sig.templates[g.name];
    for (const auto& v : sig.variables) {
      if (v.kind != VarKind::Model) continue;
      std::vector<std::string> sources{v.name};
      for (const auto& p : g.params) {
        if (scope.sortOf[p] == v.sort) sources.push_back(p);
      }
      int kind = between(rng, 0, 2);
      if (kind == 0) t[v.name] = v.name;
      else if (kind == 1) t[v.name] = scope.literal(rng, v.name);
      else t[v.name] = pick(rng, sources);
    }
  }
  return sig;
}

Bddts randomModel(const Signature& sig, Rng& rng, const GenOptions& opt) {
  Scope scope(sig);
  Bddts b;
  b.sorts = sig.sorts;
  b.variables = sig.variables;
  b.gates = sig.gates;

  std::vector<std::string> state;
  for (const auto& v : sig.variables) {
    if (v.kind != VarKind::Interaction) state.push_back(v.name);
  }

  int n = between(rng, opt.minLocations, opt.maxLocations);
  for (int i = 0; i < n; ++i) {
    Location l;
    l.name = "l" + std::to_string(i);
    l.nature = i > 0 && chance(rng, 0.5) ? Nature::Closed : Nature::Open;
    b.locations.push_back(l);
    if (i > 0 && chance(rng, opt.goalRate)) {
      std::string og = scope.atom(rng, state);
      if (b.findVariable("c") && chance(rng, 0.6)) og = scope.atom(rng, {"c"});
      if (chance(rng, 0.3)) og += " && " + scope.atom(rng, state);
      b.outputGuards[l.name] = parse(og, scope);
    }
  }
  b.initial = "l0";
  b.inputGuard = chance(rng, opt.trivialIgRate) ? Term() : parse(scope.atom(rng, state), scope);

  for (const auto& l : b.locations) {
    for (const auto& g : b.gates) {
      int count = between(rng, 0, 2);
      if (opt.initialEnablesAllGates && l.name == b.initial) count = std::max(count, 1);
      if (count == 0) continue;

      std::vector<std::string> pool = state;
      pool.insert(pool.end(), g.params.begin(), g.params.end());
      std::vector<std::string> guards;
      std::string p = scope.atom(rng, pool);
      if (count == 1) {
        guards.push_back(chance(rng, 0.4) ? "true" : p);
      } else if (chance(rng, 0.5)) {
        guards = {p, "!(" + p + ")"};
      } else {
        guards = {"(" + p + ") && " + scope.atom(rng, pool), "!(" + p + ")"};
      }

      // Goal locations are entered only by outputs from closed locations.
      std::vector<std::string> targets;
      for (const auto& t : b.locations) {
        bool goal = b.isGoal(t.name);
        if (!opt.reenterInitial && t.name == b.initial) continue;
        if (!goal || (g.dir == Direction::Output && l.nature == Nature::Closed)) targets.push_back(t.name);
      }
      if (targets.empty()) continue;
      const auto& templ = sig.templates.at(g.name);
      for (const auto& guard : guards) {
        Switch s;
        s.from = l.name;
        s.gate = g.name;
        s.guard = parse(guard, scope);
        for (const auto& [v, e] : templ) s.assign[VarKey{v, 0}] = parse(e, scope);
        s.to = pick(rng, targets);
        b.switches.push_back(std::move(s));
      }
    }
  }

  if (auto r = validate(b, scope.d); !r.ok()) {
    throw Error(ErrorCode::InvalidModel, "generator produced an invalid model: " + r.str());
  }
  return b;
}

}  // namespace bddts::testing

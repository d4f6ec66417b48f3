#include "bddts/symbolic.hpp"

#include <functional>

#include "bddts/error.hpp"
#include "bddts/saturation.hpp"
#include "compiled.hpp"

namespace bddts {

std::string str(const Sigma& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out + ">";
}

Sigma sigmaOf(const Path& p) {
  Sigma s;
  for (const auto& l : p) s.push_back(l.gate);
  return s;
}

std::vector<LocatedPath> enumeratePaths(const Bddts& b, int maxLen) {
  std::vector<LocatedPath> out{{{}, {}, b.initial}};
  std::size_t begin = 0;
  for (int len = 0; len < maxLen; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t k = 0; k < b.switches.size(); ++k) {
        const Switch& s = b.switches[k];
        if (s.from != out[i].end) continue;
        LocatedPath next = out[i];
        next.path.push_back({s.gate, s.guard, s.assign});
        next.switches.push_back(k);
        next.end = s.to;
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

Assignment groundIni(const Bddts& b, const Valuation& ini) {
  DomainSpec d = b.domain();
  Assignment a;
  for (const auto& v : b.stateVariables()) {
    auto it = ini.find(VarKey{v.name, 0});
    if (it == ini.end()) throw Error(ErrorCode::IniNotTotal, "ini has no value for " + v.name);
    a.emplace(it->first, Term::constant(it->second, d.typeOf(v.sort)));
  }
  return a;
}

namespace {

struct Step {
  Assignment a;
  Term eta;
};

Step advance(const Step& s, const Label& l, bool folding) {
  Assignment shifted = upshift(s.a);
  Step next{shifted, {}};
  for (const auto& [k, e] : l.assign) {
    Term img = substitute(e, shifted);
    next.a[k] = folding ? fold(img) : img;
  }
  next.eta = conj({upshift(s.eta), substitute(l.guard, shifted)});
  if (folding) next.eta = fold(next.eta);
  return next;
}

Step run(const Bddts& b, const Path& p, const Valuation& ini) {
  Step s{groundIni(b, ini), Term::boolean(true)};
  for (const auto& l : p) s = advance(s, l, false);
  return s;
}

Assignment modelPart(const Bddts& b, const Assignment& a) {
  Assignment out;
  for (const auto& v : b.modelVariables()) {
    if (auto it = a.find(VarKey{v, 0}); it != a.end()) out.emplace(it->first, it->second);
  }
  return out;
}

struct Accumulator {
  std::vector<Term> etas;
  std::vector<Term> goals;
};

// Walks all paths up to maxLen, or only those realizing `only` when given.
std::map<Sigma, Accumulator> traverse(const Bddts& b, const Valuation& ini, int maxLen, const Sigma* only,
                                      bool folding) {
  std::map<Sigma, Accumulator> acc;
  Sigma sigma;
  std::map<std::string, std::vector<const Switch*>> from;
  for (const auto& s : b.switches) from[s.from].push_back(&s);
  std::function<void(const std::string&, const Step&)> dfs = [&](const std::string& loc, const Step& st) {
    if (!only || sigma.size() == only->size()) {
      auto& a = acc[sigma];
      a.etas.push_back(st.eta);
      if (auto it = b.outputGuards.find(loc); it != b.outputGuards.end()) {
        Term og = substitute(it->second, modelPart(b, st.a));
        a.goals.push_back(implies(st.eta, folding ? fold(og) : og));
      }
    }
    if (static_cast<int>(sigma.size()) >= maxLen) return;
    for (const Switch* s : from[loc]) {
      if (only && (*only)[sigma.size()] != s->gate) continue;
      Step next = advance(st, {s->gate, s->guard, s->assign}, folding);
      if (folding && next.eta.isFalse()) continue;
      sigma.push_back(s->gate);
      dfs(s->to, next);
      sigma.pop_back();
    }
  };
  dfs(b.initial, Step{groundIni(b, ini), Term::boolean(true)});
  return acc;
}

Term initialGuard(const Bddts& b, const Valuation& ini, bool folding) {
  Term ig = substitute(b.inputGuard, groundIni(b, ini));
  return folding ? fold(ig) : ig;
}

void requireSaturated(const Bddts& b, const DomainSpec& d) {
  if (auto r = isSaturated(b, d); !r.ok()) throw Error(ErrorCode::NotSaturated, r.str());
}

}  // namespace

Assignment pathAssignment(const Bddts& b, const Path& p, const Valuation& ini) { return run(b, p, ini).a; }

Term pathCondition(const Bddts& b, const Path& p, const Valuation& ini) { return run(b, p, ini).eta; }

Term executionCondition(const Bddts& b, const Valuation& ini, const Sigma& sigma, const DomainSpec& d) {
  requireSaturated(b, d);
  auto acc = traverse(b, ini, static_cast<int>(sigma.size()), &sigma, false);
  auto it = acc.find(sigma);
  Term paths = it == acc.end() ? Term::boolean(false) : disj(it->second.etas);
  return conj({initialGuard(b, ini, false), paths});
}

Term goalImplication(const Bddts& b, const Valuation& ini, const Sigma& sigma, const DomainSpec& d) {
  requireSaturated(b, d);
  auto acc = traverse(b, ini, static_cast<int>(sigma.size()), &sigma, false);
  auto it = acc.find(sigma);
  return it == acc.end() ? Term::boolean(true) : conj(it->second.goals);
}

std::map<Sigma, SymbolicSummary> summaries(const Bddts& b, const Valuation& ini, int maxLen,
                                           SummaryOptions opts) {
  Term ig = initialGuard(b, ini, opts.fold);
  std::map<Sigma, SymbolicSummary> out;
  for (auto& [sigma, a] : traverse(b, ini, maxLen, nullptr, opts.fold)) {
    out.emplace(sigma, SymbolicSummary{sigma, conj({ig, disj(a.etas)}), conj(a.goals)});
  }
  return out;
}

bool pathSubsumes(const Path& p1, const Path& p2, const DomainSpec& d) {
  if (p1.size() != p2.size()) return false;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (p1[i].gate != p2[i].gate) return false;
    if (!semImplies(p2[i].guard, p1[i].guard, d)) return false;
    for (const auto& [k, e] : p1[i].assign) {
      auto it = p2[i].assign.find(k);
      if (it == p2[i].assign.end() || !semEquiv(e, it->second, d)) return false;
    }
  }
  return true;
}

std::vector<LocatedPath> locationPaths(const Bddts& b, const Sigma& sigma, const std::string& loc) {
  b.location(loc);
  std::vector<LocatedPath> out;
  for (auto& p : enumeratePaths(b, static_cast<int>(sigma.size()))) {
    if (p.end == loc && sigmaOf(p.path) == sigma) out.push_back(std::move(p));
  }
  return out;
}

std::vector<LocatedPath> locationPathsSubsuming(const Bddts& b, const Sigma& sigma, const std::string& loc,
                                                const Path& p, const DomainSpec& d) {
  std::vector<LocatedPath> out;
  for (auto& q : locationPaths(b, sigma, loc)) {
    if (pathSubsumes(p, q.path, d)) out.push_back(std::move(q));
  }
  return out;
}

std::vector<Sigma> allSigmas(const std::vector<Gate>& gates, int k) {
  std::vector<Sigma> out{{}};
  std::size_t begin = 0;
  for (int len = 0; len < k; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& g : gates) {
        Sigma s = out[i];
        s.push_back(g.name);
        out.push_back(std::move(s));
      }
    }
    begin = end;
  }
  return out;
}

std::vector<Valuation> allInis(const Bddts& b, const DomainSpec& d) {
  std::set<VarInfo> vs;
  for (const auto& v : b.stateVariables()) vs.insert({{v.name, 0}, v.sort});
  detail::Space space(vs, d);
  space.size(d);
  std::vector<Valuation> out;
  space.forEach([&](const std::vector<Value>& env) {
    out.push_back(space.valuation(env));
    return true;
  });
  return out;
}

std::string EquivalenceReport::str() const {
  if (equivalent) return "equivalent up to bound " + std::to_string(bound);
  const auto& c = *counterexample;
  return "not equivalent: " + c.side + " differs for sigma " + bddts::str(c.sigma) + " under ini " +
         bddts::str(c.ini) + " at " + bddts::str(c.witness) + "\n  left:  " + c.left.str() +
         "\n  right: " + c.right.str();
}

EquivalenceReport testingEquivalent(const std::vector<Bddts>& set1, const std::vector<Bddts>& set2,
                                    const std::vector<Valuation>& inis, int maxSigmaLen, const DomainSpec& d) {
  std::vector<const Bddts*> all;
  for (const auto& b : set1) all.push_back(&b);
  for (const auto& b : set2) all.push_back(&b);
  for (const auto* b : all) {
    requireSaturated(*b, d);
    if (!compatibleModels(*all.front(), *b)) throw Error(ErrorCode::IncompatibleModels, "models are not compatible");
  }
  EquivalenceReport rep;
  rep.bound = maxSigmaLen;
  if (all.empty()) return rep;
  const auto sigmas = allSigmas(all.front()->gates, maxSigmaLen);

  auto fold = [&](const std::vector<Bddts>& set, const Valuation& ini) {
    std::vector<std::map<Sigma, SymbolicSummary>> out;
    for (const auto& b : set) {
      if (holds(b.inputGuard, ini)) out.push_back(summaries(b, ini, maxSigmaLen));
    }
    return out;
  };
  auto combine = [](const std::vector<std::map<Sigma, SymbolicSummary>>& sums, const Sigma& s) {
    std::vector<Term> ecs, gis;
    for (const auto& m : sums) {
      if (auto it = m.find(s); it != m.end()) {
        ecs.push_back(it->second.ec);
        gis.push_back(it->second.gi);
      }
    }
    return std::make_pair(disj(ecs), conj(gis));
  };

  for (const auto& ini : inis) {
    auto s1 = fold(set1, ini);
    auto s2 = fold(set2, ini);
    for (const auto& sigma : sigmas) {
      auto [ec1, gi1] = combine(s1, sigma);
      auto [ec2, gi2] = combine(s2, sigma);
      for (const char* side : {"EC", "GI"}) {
        const Term& l = side[0] == 'E' ? ec1 : gi1;
        const Term& r = side[0] == 'E' ? ec2 : gi2;
        ++rep.checks;
        if (auto w = findDifference(l, r, d)) {
          rep.equivalent = false;
          rep.counterexample = EquivalenceReport::Counterexample{ini, sigma, side, *w, l, r};
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace bddts

#include "bddts/saturation.hpp"

#include "bddts/error.hpp"

namespace bddts {

SaturationResult saturate(const Bddts& b, const DomainSpec& d) {
  if (auto r = validate(b, d); !r.ok()) throw Error(ErrorCode::ValidationFailed, r.str());
  for (const char* reserved : {kTopSink, kBotSink}) {
    if (b.findLocation(reserved)) {
      throw Error(ErrorCode::ValidationFailed, std::string("location name ") + reserved + " is reserved");
    }
  }

  SaturationResult res;
  res.topSink = kTopSink;
  res.botSink = kBotSink;
  Bddts& s = res.model;
  s = b;
  s.switches.clear();
  for (const auto& t : b.switches) {
    if (t.from == b.initial) {
      Switch u = t;
      u.guard = conj({b.inputGuard, t.guard});
      res.modifiedInitial.push_back(u);
      s.switches.push_back(u);
    } else {
      s.switches.push_back(t);
    }
  }

  std::vector<Switch> added;
  for (const auto& l : b.locations) {
    for (const auto& g : b.gates) {
      std::vector<Term> guards;
      for (const auto* t : outgoing(s, l.name, g.name)) guards.push_back(t->guard);
      const bool toBot = l.nature == Nature::Closed && g.dir == Direction::Output;
      if (guards.empty() && !toBot) continue;
      Term rest = guards.empty() ? Term::boolean(true) : neg(disj(guards));
      if (!satisfiable(rest, d)) continue;
      added.push_back({l.name, g.name, rest, {}, toBot ? kBotSink : kTopSink});
    }
  }
  s.switches.insert(s.switches.end(), added.begin(), added.end());
  res.added = std::move(added);
  s.locations.push_back({kTopSink, Nature::Open});
  s.locations.push_back({kBotSink, Nature::Open});
  s.outputGuards[kBotSink] = Term::boolean(false);
  s.saturated = true;
  return res;
}

std::string SaturationReport::str() const {
  std::string s;
  for (const auto& c : incomplete) {
    s += "clause 1: guards of " + c.gate + " at " + c.location + " do not cover " + bddts::str(c.witness) + "\n";
  }
  for (const auto& c : missing) {
    s += "clause 2: closed location " + c.location + " has no switch for output " + c.gate + "\n";
  }
  for (auto i : initialSwitches) {
    s += "clause 3: initial switch #" + std::to_string(i) + " neither implies the input guard nor leads to an open sink without output guard\n";
  }
  return s;
}

SaturationReport isSaturated(const Bddts& b, const DomainSpec& d) {
  SaturationReport r;
  for (const auto& l : b.locations) {
    for (const auto& g : b.gates) {
      auto ts = outgoing(b, l.name, g.name);
      if (ts.empty()) {
        if (l.nature == Nature::Closed && g.dir == Direction::Output) r.missing.push_back({l.name, g.name});
        continue;
      }
      std::vector<Term> guards;
      for (const auto* t : ts) guards.push_back(t->guard);
      if (auto w = findModel(neg(disj(guards)), d)) r.incomplete.push_back({l.name, g.name, *w});
    }
  }
  for (std::size_t i = 0; i < b.switches.size(); ++i) {
    const Switch& t = b.switches[i];
    if (t.from != b.initial) continue;
    if (semImplies(t.guard, b.inputGuard, d)) continue;
    const Location* tl = b.findLocation(t.to);
    if (tl && tl->nature == Nature::Open && b.isSink(t.to) && !b.isGoal(t.to)) continue;
    r.initialSwitches.push_back(i);
  }
  return r;
}

}  // namespace bddts

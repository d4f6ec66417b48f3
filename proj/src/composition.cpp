#include "bddts/composition.hpp"

#include <deque>
#include <set>

#include "bddts/error.hpp"
#include "bddts/saturation.hpp"

namespace bddts {

std::string composedName(const std::optional<std::string>& left, const std::optional<std::string>& right) {
  return "(" + left.value_or(kBottomTag) + "," + right.value_or(kBottomTag) + ")";
}

namespace {

using Side = std::optional<std::string>;

std::vector<const Switch*> out(const Bddts& b, const Side& l, const std::string& gate) {
  if (!l) return {};
  return outgoing(b, *l, gate);
}

}  // namespace

Bddts disjunction(const Bddts& b1, const Bddts& b2, const DomainSpec& d) {
  if (!compatibleModels(b1, b2)) throw Error(ErrorCode::IncompatibleModels, "models differ in gates, variables or sorts");
  for (const Bddts* b : {&b1, &b2}) {
    if (auto r = isSaturated(*b, d); !r.ok()) throw Error(ErrorCode::NotSaturated, r.str());
  }

  Bddts c;
  c.sorts = b1.sorts;
  for (const auto& s : b2.sorts) {
    if (std::find(c.sorts.begin(), c.sorts.end(), s) == c.sorts.end()) c.sorts.push_back(s);
  }
  c.variables = b1.variables;
  c.gates = b1.gates;
  for (auto& g : c.gates) {
    for (const auto& [cv, iv] : b2.gate(g.name).renames) {
      auto [it, fresh] = g.renames.emplace(cv, iv);
      if (!fresh && it->second != iv) {
        throw Error(ErrorCode::IncompatibleModels, "gate " + g.name + " renames " + cv + " differently");
      }
    }
  }
  c.inputGuard = disj({b1.inputGuard, b2.inputGuard});
  c.saturated = true;

  std::deque<std::pair<Side, Side>> queue;
  std::set<std::string> seen;
  auto visit = [&](const Side& l1, const Side& l2) {
    std::string name = composedName(l1, l2);
    if (seen.insert(name).second) {
      queue.emplace_back(l1, l2);
      Nature n;
      if (l1 && l2) {
        bool closed = b1.location(*l1).nature == Nature::Closed && b2.location(*l2).nature == Nature::Closed;
        n = closed ? Nature::Closed : Nature::Open;
      } else {
        n = l1 ? b1.location(*l1).nature : b2.location(*l2).nature;
      }
      c.locations.push_back({name, n});
      std::vector<Term> ogs;
      if (l1 && b1.isGoal(*l1)) ogs.push_back(b1.outputGuards.at(*l1));
      if (l2 && b2.isGoal(*l2)) ogs.push_back(b2.outputGuards.at(*l2));
      if (!ogs.empty()) c.outputGuards[name] = ogs.size() == 1 ? ogs[0] : conj(ogs);
    }
    return name;
  };

  c.initial = visit(b1.initial, b2.initial);
  while (!queue.empty()) {
    auto [l1, l2] = queue.front();
    queue.pop_front();
    const std::string from = composedName(l1, l2);
    for (const auto& g : c.gates) {
      auto t1 = out(b1, l1, g.name);
      auto t2 = out(b2, l2, g.name);
      if (!t1.empty() && !t2.empty()) {
        for (const auto* s1 : t1) {
          for (const auto* s2 : t2) {
            if (!compatible(s1->assign, s2->assign, d)) {
              throw Error(ErrorCode::IncompatibleAssignments,
                          "rule 1 at " + from + " on " + g.name + ": " + str(s1->assign) + " (" + *l1 +
                              " -> " + s1->to + ") vs " + str(s2->assign) + " (" + *l2 + " -> " + s2->to + ")");
            }
            std::string to = visit(s1->to, s2->to);
            c.switches.push_back({from, g.name, conj({s1->guard, s2->guard}),
                                  unionAssign(s1->assign, s2->assign, d), to});
          }
        }
      } else if (!t1.empty()) {
        for (const auto* s1 : t1) {
          std::string to = visit(s1->to, std::nullopt);
          c.switches.push_back({from, g.name, s1->guard, s1->assign, to});
        }
      } else {
        for (const auto* s2 : t2) {
          std::string to = visit(std::nullopt, s2->to);
          c.switches.push_back({from, g.name, s2->guard, s2->assign, to});
        }
      }
    }
  }
  return c;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Bddts& b1, const Bddts& b2, const DomainSpec& d) : b1_(b1), b2_(b2), d_(d) {
    for (std::size_t i = 0; i < b1.switches.size(); ++i) from1_[b1.switches[i].from].push_back(i);
    for (std::size_t j = 0; j < b2.switches.size(); ++j) from2_[b2.switches[j].from].push_back(j);
  }

  std::optional<IsoWitness> run() {
    State st;
    if (!tryMap(st, b1_.initial, b2_.initial)) return std::nullopt;
    if (!search(st)) return std::nullopt;
    return result_;
  }

 private:
  struct State {
    std::map<std::string, std::string> f;
    std::map<std::string, std::string> finv;
    std::vector<std::pair<std::string, std::string>> queue;
    std::size_t next = 0;
    std::vector<std::pair<std::size_t, std::size_t>> switches;
  };

  bool locationsMatch(const std::string& l1, const std::string& l2) {
    auto key = std::make_pair(l1, l2);
    if (auto it = locCache_.find(key); it != locCache_.end()) return it->second;
    bool ok = b1_.location(l1).nature == b2_.location(l2).nature && b1_.isGoal(l1) == b2_.isGoal(l2);
    ok = ok && from1_[l1].size() == from2_[l2].size();
    if (ok) {
      for (const auto& g : b1_.gates) {
        ok = ok && outgoing(b1_, l1, g.name).size() == outgoing(b2_, l2, g.name).size();
      }
    }
    if (ok && b1_.isGoal(l1)) ok = semEquiv(b1_.outputGuards.at(l1), b2_.outputGuards.at(l2), d_);
    locCache_[key] = ok;
    return ok;
  }

  bool labelsMatch(std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, j);
    if (auto it = labelCache_.find(key); it != labelCache_.end()) return it->second;
    const Switch& s = b1_.switches[i];
    const Switch& t = b2_.switches[j];
    bool ok = s.gate == t.gate && semEquiv(s.guard, t.guard, d_) && compatible(s.assign, t.assign, d_);
    labelCache_[key] = ok;
    return ok;
  }

  bool tryMap(State& st, const std::string& l1, const std::string& l2) {
    if (auto it = st.f.find(l1); it != st.f.end()) return it->second == l2;
    if (st.finv.count(l2)) return false;
    if (!locationsMatch(l1, l2)) return false;
    st.f[l1] = l2;
    st.finv[l2] = l1;
    st.queue.emplace_back(l1, l2);
    return true;
  }

  bool search(State st) {
    if (st.next < st.queue.size()) {
      auto [l1, l2] = st.queue[st.next];
      std::set<std::size_t> used;
      return matchSwitches(st, from1_[l1], 0, from2_[l2], used);
    }
    if (st.f.size() == b1_.locations.size()) {
      result_.locations = st.f;
      result_.switches = st.switches;
      return true;
    }
    const Location* free = nullptr;
    for (const auto& l : b1_.locations) {
      if (!st.f.count(l.name)) {
        free = &l;
        break;
      }
    }
    for (const auto& l : b2_.locations) {
      State next = st;
      if (tryMap(next, free->name, l.name) && search(std::move(next))) return true;
    }
    return false;
  }

  bool matchSwitches(const State& st, const std::vector<std::size_t>& mine, std::size_t k,
                     const std::vector<std::size_t>& theirs, std::set<std::size_t>& used) {
    if (k == mine.size()) {
      State next = st;
      ++next.next;
      return search(std::move(next));
    }
    std::size_t i = mine[k];
    for (std::size_t j : theirs) {
      if (used.count(j) || !labelsMatch(i, j)) continue;
      State next = st;
      if (!tryMap(next, b1_.switches[i].to, b2_.switches[j].to)) continue;
      next.switches.emplace_back(i, j);
      used.insert(j);
      if (matchSwitches(next, mine, k + 1, theirs, used)) return true;
      used.erase(j);
    }
    return false;
  }

  const Bddts& b1_;
  const Bddts& b2_;
  const DomainSpec& d_;
  std::map<std::string, std::vector<std::size_t>> from1_, from2_;
  std::map<std::pair<std::string, std::string>, bool> locCache_;
  std::map<std::pair<std::size_t, std::size_t>, bool> labelCache_;
  IsoWitness result_;
};

}  // namespace

std::optional<IsoWitness> isomorphic(const Bddts& b1, const Bddts& b2, const DomainSpec& d, std::size_t cap) {
  if (!compatibleModels(b1, b2)) throw Error(ErrorCode::IncompatibleModels, "models differ in gates, variables or sorts");
  if (b1.locations.size() > cap || b2.locations.size() > cap) {
    throw Error(ErrorCode::DomainTooLarge, "isomorphism search is capped at " + std::to_string(cap) +
                                               " locations (" + std::to_string(b1.locations.size()) + " vs " +
                                               std::to_string(b2.locations.size()) + ")");
  }
  if (b1.locations.size() != b2.locations.size() || b1.switches.size() != b2.switches.size()) return std::nullopt;
  if (!semEquiv(b1.inputGuard, b2.inputGuard, d)) return std::nullopt;
  return IsoSearch(b1, b2, d).run();
}

}  // namespace bddts

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bddts/model.hpp"

namespace bddts {

struct GateValue {
  std::string gate;
  std::vector<Value> values;

  std::string str() const;
  friend auto operator<=>(const GateValue&, const GateValue&) = default;
};

using GateSeq = std::vector<GateValue>;

// Every value of the gate, in universe order.
std::vector<GateValue> gateValues(const Gate& g, const Bddts& b, const DomainSpec& d);

Valuation gateValuation(const Bddts& b, const GateValue& u);     // ϑ_u
Valuation gateSeqValuation(const Bddts& b, const GateSeq& w);    // ϑ_ω
// ϑ_ξ extended with c ↦ ϑ_ξ(ρ^g(c)) for the last gate g. Throws
// RenamingUndefined on an empty sequence.
Valuation hatValuation(const Bddts& b, const GateSeq& xi);

struct DerivedSts {
  Bddts model;  // switches into goal locations carry the embedded output guard
  Valuation ini;
};

// Throws NotOutputRich, RenamingNotDerivable, IniNotTotal.
DerivedSts deriveSts(const Bddts& b, const Valuation& ini);

struct LtsState {
  std::string location;
  Valuation values;  // total over V
};

struct LtsTransition {
  std::size_t from;
  GateValue label;
  std::size_t to;
  std::size_t sw;  // switch index in the derived model
};

struct Lts {
  std::vector<LtsState> states;
  std::vector<LtsTransition> transitions;
  std::vector<int> depth;
  std::vector<bool> expanded;  // false for states on the depth frontier

  std::vector<const LtsTransition*> from(std::size_t q) const;
};

inline constexpr int kDefaultDepth = 6;

// Throws DomainTooLarge when a gate's value space exceeds the cap.
Lts interpret(const DerivedSts& s, const DomainSpec& d, int maxDepth);

struct TestCase {
  struct State {
    std::string location;
    Nature nature = Nature::Open;
    Valuation values;
    bool expanded = false;
  };
  struct Transition {
    std::size_t from;
    GateValue label;
    std::size_t to;
  };

  std::vector<Gate> gates;
  std::vector<State> states;  // states[failState] is q_f
  std::vector<Transition> transitions;
  std::set<std::size_t> pass;
  std::size_t initial = 0;
  std::size_t failState = 0;

  std::optional<std::size_t> step(std::size_t q, const GateValue& u) const;
  std::vector<const Transition*> from(std::size_t q) const;
  void reindex();

 private:
  std::map<std::pair<std::size_t, GateValue>, std::size_t> index_;
};

// Throws IniViolatesIG, NotOutputRich and the deriveSts errors.
TestCase deriveTestCase(const Bddts& b, const Valuation& ini, const DomainSpec& d, int maxDepth = kDefaultDepth);

enum class VerdictKind { Pass, Fail, Inconclusive };
const char* verdictName(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::size_t prefix = 0;  // symbols consumed when the verdict was reached
  bool truncated = false;  // the walk hit the depth bound
};

Verdict verdict(const TestCase& tc, const GateSeq& w);

struct Sut {
  Bddts model;
  Valuation ini;
};

struct RunResult {
  Verdict verdict;
  GateSeq trace;
  std::vector<std::string> transcript;
  bool budgetExceeded = false;
};

// Throws GateMismatch when the SuT's gates differ from the test case's.
RunResult runAgainstSut(const TestCase& tc, const Sut& sut, const DomainSpec& d, std::uint64_t seed,
                        int maxSteps);

}  // namespace bddts

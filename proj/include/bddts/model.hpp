#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bddts/domain.hpp"
#include "bddts/term.hpp"

namespace bddts {

enum class VarKind { Model, Context, Interaction };
enum class Direction { Input, Output };
enum class Nature { Open, Closed };

struct Variable {
  std::string name;
  std::string sort;
  VarKind kind = VarKind::Model;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Gate {
  std::string name;
  Direction dir = Direction::Output;
  std::vector<std::string> params;  // interaction variables, in order
  // Context variable to interaction variable, used to carry output guards
  // onto the gate's values.
  std::map<std::string, std::string> renames;
  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Location {
  std::string name;
  Nature nature = Nature::Open;
  friend bool operator==(const Location&, const Location&) = default;
};

struct Switch {
  std::string from;
  std::string gate;
  Term guard;
  Assignment assign;
  std::string to;
};

bool operator==(const Switch& a, const Switch& b);

inline constexpr const char* kTopSink = "__top";
inline constexpr const char* kBotSink = "__bot";

struct Bddts {
  std::vector<Sort> sorts;  // declared sorts; Bool is builtin
  std::vector<Variable> variables;
  std::vector<Gate> gates;
  std::vector<Location> locations;
  std::vector<Switch> switches;
  std::string initial;
  Term inputGuard;
  std::map<std::string, Term> outputGuards;
  bool saturated = false;

  DomainSpec domain() const;
  SortTable sortTable() const;

  const Location* findLocation(const std::string& name) const;
  const Location& location(const std::string& name) const;  // UnknownLocation
  const Gate* findGate(const std::string& name) const;
  const Gate& gate(const std::string& name) const;  // UnknownGateOrVariable
  const Variable* findVariable(const std::string& name) const;

  bool isGoal(const std::string& loc) const { return outputGuards.count(loc) != 0; }
  bool isSink(const std::string& loc) const;
  bool isOpen(const std::string& loc) const { return location(loc).nature == Nature::Open; }

  // V = MV ∪ CV, and the two parts.
  std::vector<Variable> stateVariables() const;
  std::set<std::string> modelVariables() const;
  std::set<std::string> contextVariables() const;
};

bool operator==(const Bddts& a, const Bddts& b);

struct Violation {
  std::string kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

ValidationReport validate(const Bddts& b, const DomainSpec& d);

// Least fixed point; interaction variables excluded.
std::set<std::string> activeVars(const Bddts& b, const std::string& loc);
std::map<std::string, std::set<std::string>> activeVars(const Bddts& b);

struct Interaction {
  std::string gate;
  Direction dir;
  std::vector<std::string> vars;
  friend bool operator==(const Interaction&, const Interaction&) = default;
};

std::vector<Interaction> interactionsOf(const std::vector<Gate>& gates);
std::vector<const Switch*> outgoing(const Bddts& b, const std::string& loc, const std::string& gate);
std::vector<const Switch*> outgoing(const Bddts& b, const std::string& loc);

bool isOutputRich(const Bddts& b);
bool compatibleModels(const Bddts& b1, const Bddts& b2);

}  // namespace bddts

#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bddts/domain.hpp"
#include "bddts/value.hpp"

namespace bddts {

// A variable occurrence x@time; x@0 is the plain variable x.
struct VarKey {
  std::string name;
  int time = 0;

  std::string str() const;
  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

enum class Op {
  Const,
  Var,
  Not,
  And,
  Or,
  Implies,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Add,
  Sub,
  Contains,
  ListLit,
};

class Term;

struct TermNode {
  Op op = Op::Const;
  Type type;
  Value value;          // Const
  VarKey var;           // Var
  std::string sort;     // Var: declared sort name
  std::vector<Term> args;
};

class Term {
 public:
  // The constant true.
  Term();

  static Term constant(Value v, Type t);
  static Term boolean(bool b);
  static Term integer(std::int64_t i);
  static Term variable(VarKey key, std::string sort, Type t);
  // Builds an application without flattening; type-checks the arguments.
  static Term apply(Op op, std::vector<Term> args);

  Op op() const { return node_->op; }
  const Type& type() const { return node_->type; }
  const Value& value() const { return node_->value; }
  const VarKey& var() const { return node_->var; }
  const std::string& sort() const { return node_->sort; }
  const std::vector<Term>& args() const { return node_->args; }

  bool isTrue() const;
  bool isFalse() const;
  bool isGround() const;

  std::string str() const;
  // Node identity; structurally equal terms may have distinct ids.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

// Smart builders: flatten nested conjunctions/disjunctions and drop neutral
// elements. They never inspect anything beyond literal true/false.
Term conj(const std::vector<Term>& ts);
Term disj(const std::vector<Term>& ts);
Term neg(const Term& t);
Term implies(const Term& a, const Term& b);
Term equals(const Term& a, const Term& b);

using Assignment = std::map<VarKey, Term>;
using Valuation = std::map<VarKey, Value>;

struct VarInfo {
  VarKey key;
  std::string sort;
  friend auto operator<=>(const VarInfo& a, const VarInfo& b) { return a.key <=> b.key; }
  friend bool operator==(const VarInfo& a, const VarInfo& b) { return a.key == b.key; }
};

std::set<VarInfo> vars(const Term& t);
void collectVars(const Term& t, std::set<VarInfo>& out);

Value evaluate(const Term& t, const Valuation& v);
bool holds(const Term& t, const Valuation& v);

Term substitute(const Term& t, const Assignment& a);
Term upshift(const Term& t);
Term upshiftVars(const Term& t, const std::set<std::string>& names);
// Shifts the images; the assigned (state) variables keep their keys.
Assignment upshift(const Assignment& a);
// Shifts the keys.
Valuation upshift(const Valuation& v);

// Evaluates ground subterms and simplifies connectives around true/false.
Term fold(const Term& t);

// Exhaustive finite-domain checks over vars(t1) ∪ vars(t2). Throw
// DomainTooLarge when the valuation count exceeds the domain's cap.
bool semEquiv(const Term& t1, const Term& t2, const DomainSpec& d);
bool semImplies(const Term& t1, const Term& t2, const DomainSpec& d);
bool satisfiable(const Term& t, const DomainSpec& d);

// A valuation over vars(t) under which the boolean term t holds.
std::optional<Valuation> findModel(const Term& t, const DomainSpec& d);
// A valuation under which t1 and t2 evaluate differently.
std::optional<Valuation> findDifference(const Term& t1, const Term& t2, const DomainSpec& d);

bool compatible(const Assignment& a1, const Assignment& a2, const DomainSpec& d);
Assignment unionAssign(const Assignment& a1, const Assignment& a2, const DomainSpec& d);
// Variable name to sort name; time-indexed occurrences x@i resolve through x.
using SortTable = std::map<std::string, std::string>;

// Conjunction of x == a(x); images must be ground (NonGroundImage).
Term assignToFormula(const Assignment& a, const SortTable& sorts);

std::string str(const Assignment& a);
std::string str(const Valuation& v);

}  // namespace bddts

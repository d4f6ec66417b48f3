#include "bddts/term.hpp"

#include <sstream>

#include "bddts/error.hpp"
#include "compiled.hpp"

namespace bddts {

std::string VarKey::str() const {
  return time == 0 ? name : name + "@" + std::to_string(time);
}

namespace {

const char* opSymbol(Op op) {
  switch (op) {
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Implies: return "=>";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    default: return "?";
  }
}

[[noreturn]] void mismatch(Op op, const std::string& detail) {
  throw Error(ErrorCode::SortMismatch, std::string("operator ") +
                                           (op == Op::Contains ? "contains" : opSymbol(op)) + ": " +
                                           detail);
}

void expect(Op op, const Term& t, Type::Kind k) {
  if (t.type().kind != k && t.type().kind != Type::Kind::Any) {
    mismatch(op, "unexpected operand of type " + t.type().str() + " in " + t.str());
  }
}

Type resultType(Op op, const std::vector<Term>& args) {
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) mismatch(op, "wrong number of operands");
  };
  switch (op) {
    case Op::Not:
      arity(1, 1);
      expect(op, args[0], Type::Kind::Bool);
      return Type::boolean();
    case Op::And:
    case Op::Or:
      arity(1, SIZE_MAX);
      for (const auto& a : args) expect(op, a, Type::Kind::Bool);
      return Type::boolean();
    case Op::Implies:
      arity(2, 2);
      expect(op, args[0], Type::Kind::Bool);
      expect(op, args[1], Type::Kind::Bool);
      return Type::boolean();
    case Op::Eq:
    case Op::Ne:
      arity(2, 2);
      if (!typesMatch(args[0].type(), args[1].type())) {
        mismatch(op, args[0].type().str() + " vs " + args[1].type().str());
      }
      return Type::boolean();
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
      arity(2, 2);
      expect(op, args[0], Type::Kind::Int);
      expect(op, args[1], Type::Kind::Int);
      return Type::boolean();
    case Op::Add:
    case Op::Sub:
      arity(2, 2);
      expect(op, args[0], Type::Kind::Int);
      expect(op, args[1], Type::Kind::Int);
      return Type::integer();
    case Op::Contains:
      arity(2, 2);
      expect(op, args[0], Type::Kind::List);
      if (args[0].type().kind == Type::Kind::List &&
          !typesMatch(*args[0].type().element, args[1].type())) {
        mismatch(op, "element " + args[1].type().str() + " in " + args[0].type().str());
      }
      return Type::boolean();
    case Op::ListLit: {
      Type elem = Type::any();
      for (const auto& a : args) {
        if (!typesMatch(elem, a.type())) mismatch(op, "heterogeneous list literal");
        if (elem.kind == Type::Kind::Any) elem = a.type();
      }
      return Type::listOf(elem);
    }
    case Op::Const:
    case Op::Var: break;
  }
  mismatch(op, "not an application");
}

Term rebuild(const Term& t, std::vector<Term> args);

}  // namespace

Term::Term() : Term(Term::boolean(true)) {}

Term Term::constant(Value v, Type t) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::Const;
  n->value = std::move(v);
  n->type = std::move(t);
  return Term(std::move(n));
}

Term Term::boolean(bool b) {
  static const Term t(std::make_shared<TermNode>(TermNode{Op::Const, Type::boolean(), Value::boolean(true), {}, {}, {}}));
  static const Term f(std::make_shared<TermNode>(TermNode{Op::Const, Type::boolean(), Value::boolean(false), {}, {}, {}}));
  return b ? t : f;
}

Term Term::integer(std::int64_t i) { return constant(Value::integer(i), Type::integer()); }

Term Term::variable(VarKey key, std::string sort, Type t) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::Var;
  n->var = std::move(key);
  n->sort = std::move(sort);
  n->type = std::move(t);
  return Term(std::move(n));
}

Term Term::apply(Op op, std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->op = op;
  n->type = resultType(op, args);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::isTrue() const { return op() == Op::Const && value() == Value::boolean(true); }
bool Term::isFalse() const { return op() == Op::Const && value() == Value::boolean(false); }

bool Term::isGround() const {
  if (op() == Op::Var) return false;
  for (const auto& a : args()) {
    if (!a.isGround()) return false;
  }
  return true;
}

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Not: return 4;
    case Op::Eq:
    case Op::Ne:
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge: return 5;
    case Op::Add:
    case Op::Sub: return 6;
    default: return 7;
  }
}

void print(const Term& t, int minPrec, std::ostream& os) {
  int p = precedence(t.op());
  bool paren = p < minPrec;
  if (paren) os << '(';
  switch (t.op()) {
    case Op::Const: os << t.value().str(); break;
    case Op::Var: os << t.var().str(); break;
    case Op::Not:
      os << '!';
      print(t.args()[0], 4, os);
      break;
    case Op::And:
    case Op::Or:
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) os << ' ' << opSymbol(t.op()) << ' ';
        print(t.args()[i], p + 1, os);
      }
      break;
    case Op::Implies:
      print(t.args()[0], 2, os);
      os << " => ";
      print(t.args()[1], 1, os);
      break;
    case Op::Eq:
    case Op::Ne:
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
      print(t.args()[0], 6, os);
      os << ' ' << opSymbol(t.op()) << ' ';
      print(t.args()[1], 6, os);
      break;
    case Op::Add:
    case Op::Sub:
      print(t.args()[0], 6, os);
      os << ' ' << opSymbol(t.op()) << ' ';
      print(t.args()[1], 7, os);
      break;
    case Op::Contains:
      os << "contains(";
      print(t.args()[0], 0, os);
      os << ", ";
      print(t.args()[1], 0, os);
      os << ')';
      break;
    case Op::ListLit:
      os << '[';
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) os << ',';
        print(t.args()[i], 0, os);
      }
      os << ']';
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string Term::str() const {
  std::ostringstream os;
  print(*this, 0, os);
  return os.str();
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  if (a.op() == Op::Const) return a.value() == b.value();
  if (a.op() == Op::Var) return a.var() == b.var();
  if (a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!(a.args()[i] == b.args()[i])) return false;
  }
  return true;
}

namespace {

Term nary(Op op, const std::vector<Term>& ts) {
  const bool unit = op == Op::And;  // neutral element
  std::vector<Term> flat;
  for (const auto& t : ts) {
    if (t.op() == Op::Const && t.type().kind == Type::Kind::Bool) {
      if (t.value().asBool() == unit) continue;
      return Term::boolean(!unit);
    }
    if (t.op() == op) {
      flat.insert(flat.end(), t.args().begin(), t.args().end());
    } else {
      flat.push_back(t);
    }
  }
  if (flat.empty()) return Term::boolean(unit);
  if (flat.size() == 1) return flat.front();
  return Term::apply(op, std::move(flat));
}

}  // namespace

Term conj(const std::vector<Term>& ts) { return nary(Op::And, ts); }
Term disj(const std::vector<Term>& ts) { return nary(Op::Or, ts); }

Term neg(const Term& t) {
  if (t.isTrue()) return Term::boolean(false);
  if (t.isFalse()) return Term::boolean(true);
  return Term::apply(Op::Not, {t});
}

Term implies(const Term& a, const Term& b) {
  if (a.isTrue()) return b;
  if (a.isFalse() || b.isTrue()) return Term::boolean(true);
  return Term::apply(Op::Implies, {a, b});
}

Term equals(const Term& a, const Term& b) { return Term::apply(Op::Eq, {a, b}); }

void collectVars(const Term& t, std::set<VarInfo>& out) {
  if (t.op() == Op::Var) {
    out.insert(VarInfo{t.var(), t.sort()});
    return;
  }
  for (const auto& a : t.args()) collectVars(a, out);
}

std::set<VarInfo> vars(const Term& t) {
  std::set<VarInfo> out;
  collectVars(t, out);
  return out;
}

namespace {

Value applyOp(Op op, const std::vector<Value>& xs) {
  switch (op) {
    case Op::Not: return Value::boolean(!xs[0].asBool());
    case Op::And: {
      for (const auto& x : xs) {
        if (!x.asBool()) return Value::boolean(false);
      }
      return Value::boolean(true);
    }
    case Op::Or: {
      for (const auto& x : xs) {
        if (x.asBool()) return Value::boolean(true);
      }
      return Value::boolean(false);
    }
    case Op::Implies: return Value::boolean(!xs[0].asBool() || xs[1].asBool());
    case Op::Eq: return Value::boolean(xs[0] == xs[1]);
    case Op::Ne: return Value::boolean(!(xs[0] == xs[1]));
    case Op::Lt: return Value::boolean(xs[0].asInt() < xs[1].asInt());
    case Op::Le: return Value::boolean(xs[0].asInt() <= xs[1].asInt());
    case Op::Gt: return Value::boolean(xs[0].asInt() > xs[1].asInt());
    case Op::Ge: return Value::boolean(xs[0].asInt() >= xs[1].asInt());
    case Op::Add: return Value::integer(xs[0].asInt() + xs[1].asInt());
    case Op::Sub: return Value::integer(xs[0].asInt() - xs[1].asInt());
    case Op::Contains: {
      for (const auto& e : xs[0].items()) {
        if (e == xs[1]) return Value::boolean(true);
      }
      return Value::boolean(false);
    }
    case Op::ListLit: return Value::list(xs);
    default: break;
  }
  throw Error(ErrorCode::SortMismatch, "cannot apply operator");
}

bool kindMatches(const Value& v, const Type& t) {
  switch (t.kind) {
    case Type::Kind::Bool: return v.kind() == Value::Kind::Bool;
    case Type::Kind::Int: return v.kind() == Value::Kind::Int;
    case Type::Kind::Enum:
      return v.kind() == Value::Kind::Enum && v.asEnum().sort == t.enumSort;
    case Type::Kind::List: return v.kind() == Value::Kind::List;
    case Type::Kind::Any: return true;
  }
  return false;
}

}  // namespace

Value evaluate(const Term& t, const Valuation& v) {
  switch (t.op()) {
    case Op::Const: return t.value();
    case Op::Var: {
      auto it = v.find(t.var());
      if (it == v.end()) {
        throw Error(ErrorCode::UnboundVariable, "unbound variable " + t.var().str());
      }
      if (!kindMatches(it->second, t.type())) {
        throw Error(ErrorCode::SortMismatch,
                    "value " + it->second.str() + " for " + t.var().str() + " : " + t.type().str());
      }
      return it->second;
    }
    default: break;
  }
  std::vector<Value> xs;
  xs.reserve(t.args().size());
  for (const auto& a : t.args()) xs.push_back(evaluate(a, v));
  return applyOp(t.op(), xs);
}

bool holds(const Term& t, const Valuation& v) {
  Value r = evaluate(t, v);
  if (r.kind() != Value::Kind::Bool) throw Error(ErrorCode::SortMismatch, "not a formula: " + t.str());
  return r.asBool();
}

namespace {

Term rebuild(const Term& t, std::vector<Term> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].id() != t.args()[i].id()) return Term::apply(t.op(), std::move(args));
  }
  return t;
}

template <class F>
Term mapVars(const Term& t, const F& f) {
  if (t.op() == Op::Var) return f(t);
  if (t.op() == Op::Const) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(mapVars(a, f));
  return rebuild(t, std::move(args));
}

}  // namespace

Term substitute(const Term& t, const Assignment& a) {
  if (a.empty()) return t;
  return mapVars(t, [&](const Term& v) {
    auto it = a.find(v.var());
    if (it == a.end()) return v;
    if (!typesMatch(v.type(), it->second.type())) {
      throw Error(ErrorCode::SortMismatch, "cannot substitute " + it->second.str() + " : " +
                                               it->second.type().str() + " for " + v.var().str());
    }
    return it->second;
  });
}

Term upshift(const Term& t) {
  return mapVars(t, [](const Term& v) {
    return Term::variable({v.var().name, v.var().time + 1}, v.sort(), v.type());
  });
}

Term upshiftVars(const Term& t, const std::set<std::string>& names) {
  return mapVars(t, [&](const Term& v) {
    if (!names.count(v.var().name)) return v;
    return Term::variable({v.var().name, v.var().time + 1}, v.sort(), v.type());
  });
}

Assignment upshift(const Assignment& a) {
  Assignment out;
  for (const auto& [k, e] : a) out.emplace(k, upshift(e));
  return out;
}

Valuation upshift(const Valuation& v) {
  Valuation out;
  for (const auto& [k, x] : v) out.emplace(VarKey{k.name, k.time + 1}, x);
  return out;
}

Term fold(const Term& t) {
  if (t.op() == Op::Const || t.op() == Op::Var) return t;
  std::vector<Term> args;
  bool ground = true;
  for (const auto& a : t.args()) {
    args.push_back(fold(a));
    ground = ground && args.back().op() == Op::Const;
  }
  if (ground) return Term::constant(evaluate(Term::apply(t.op(), args), {}), t.type());
  switch (t.op()) {
    case Op::And: return conj(args);
    case Op::Or: return disj(args);
    case Op::Not: return neg(args[0]);
    case Op::Implies: return implies(args[0], args[1]);
    default: return Term::apply(t.op(), std::move(args));
  }
}

namespace detail {

Compiled::Compiled(const Term& t, const std::map<VarKey, int>& slots) {
  std::unordered_map<const void*, int> seen;
  root_ = add(t, slots, seen);
}

int Compiled::add(const Term& t, const std::map<VarKey, int>& slots,
                  std::unordered_map<const void*, int>& seen) {
  const void* key = t.id();
  if (auto it = seen.find(key); it != seen.end()) return it->second;
  Node n;
  n.op = t.op();
  if (t.op() == Op::Const) n.constant = t.value();
  if (t.op() == Op::Var) {
    auto it = slots.find(t.var());
    if (it == slots.end()) throw Error(ErrorCode::UnboundVariable, "unbound variable " + t.var().str());
    n.slot = it->second;
  }
  std::vector<int> kids;
  for (const auto& a : t.args()) kids.push_back(add(a, slots, seen));
  n.first = static_cast<int>(children_.size());
  n.count = static_cast<int>(kids.size());
  children_.insert(children_.end(), kids.begin(), kids.end());
  nodes_.push_back(std::move(n));
  int idx = static_cast<int>(nodes_.size()) - 1;
  seen.emplace(key, idx);
  return idx;
}

bool Compiled::boolean(int i, const std::vector<Value>& env) const {
  const Node& n = nodes_[i];
  const int* c = children_.data() + n.first;
  switch (n.op) {
    case Op::Const: return n.constant.asBool();
    case Op::Var: return env[n.slot].asBool();
    case Op::Not: return !boolean(c[0], env);
    case Op::And:
      for (int k = 0; k < n.count; ++k) {
        if (!boolean(c[k], env)) return false;
      }
      return true;
    case Op::Or:
      for (int k = 0; k < n.count; ++k) {
        if (boolean(c[k], env)) return true;
      }
      return false;
    case Op::Implies: return !boolean(c[0], env) || boolean(c[1], env);
    case Op::Eq:
    case Op::Ne: {
      bool eq;
      if (nodes_[c[0]].op == Op::Var && nodes_[c[1]].op == Op::Const) {
        eq = env[nodes_[c[0]].slot] == nodes_[c[1]].constant;
      } else {
        eq = value(c[0], env) == value(c[1], env);
      }
      return n.op == Op::Eq ? eq : !eq;
    }
    case Op::Lt: return integer(c[0], env) < integer(c[1], env);
    case Op::Le: return integer(c[0], env) <= integer(c[1], env);
    case Op::Gt: return integer(c[0], env) > integer(c[1], env);
    case Op::Ge: return integer(c[0], env) >= integer(c[1], env);
    case Op::Contains: {
      Value xs = value(c[0], env);
      Value x = value(c[1], env);
      for (const auto& e : xs.items()) {
        if (e == x) return true;
      }
      return false;
    }
    default: break;
  }
  throw Error(ErrorCode::SortMismatch, "not a formula");
}

std::int64_t Compiled::integer(int i, const std::vector<Value>& env) const {
  const Node& n = nodes_[i];
  const int* c = children_.data() + n.first;
  switch (n.op) {
    case Op::Const: return n.constant.asInt();
    case Op::Var: return env[n.slot].asInt();
    case Op::Add: return integer(c[0], env) + integer(c[1], env);
    case Op::Sub: return integer(c[0], env) - integer(c[1], env);
    default: break;
  }
  throw Error(ErrorCode::SortMismatch, "not an integer term");
}

Value Compiled::value(int i, const std::vector<Value>& env) const {
  const Node& n = nodes_[i];
  switch (n.op) {
    case Op::Const: return n.constant;
    case Op::Var: return env[n.slot];
    case Op::Add:
    case Op::Sub: return Value::integer(integer(i, env));
    case Op::ListLit: {
      std::vector<Value> xs;
      for (int k = 0; k < n.count; ++k) xs.push_back(value(children_[n.first + k], env));
      return Value::list(std::move(xs));
    }
    default: return Value::boolean(boolean(i, env));
  }
}

Space::Space(const std::set<VarInfo>& vs, const DomainSpec& d) {
  for (const auto& v : vs) {
    slots.emplace(v.key, static_cast<int>(vars.size()));
    vars.push_back(v);
    universes.push_back(&d.universe(v.sort));
  }
}

std::uint64_t Space::size(const DomainSpec& d) const {
  std::uint64_t n = 1;
  for (const auto* u : universes) {
    if (u->empty()) return 0;
    if (n > d.valuationCap() / u->size() + 1) n = d.valuationCap() + 1;
    else n *= u->size();
    if (n > d.valuationCap()) {
      throw Error(ErrorCode::DomainTooLarge,
                  "more than " + std::to_string(d.valuationCap()) + " valuations over " +
                      std::to_string(vars.size()) + " variables");
    }
  }
  return n;
}

bool Space::forEach(const std::function<bool(const std::vector<Value>&)>& f) const {
  const std::size_t k = vars.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<Value> env(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (universes[i]->empty()) return true;
    env[i] = (*universes[i])[0];
  }
  while (true) {
    if (!f(env)) return false;
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++idx[i] < universes[i]->size()) {
        env[i] = (*universes[i])[idx[i]];
        break;
      }
      idx[i] = 0;
      env[i] = (*universes[i])[0];
    }
    if (i == k) return true;
  }
}

Valuation Space::valuation(const std::vector<Value>& env) const {
  Valuation v;
  for (std::size_t i = 0; i < vars.size(); ++i) v.emplace(vars[i].key, env[i]);
  return v;
}

}  // namespace detail

std::optional<Valuation> findDifference(const Term& t1, const Term& t2, const DomainSpec& d) {
  std::set<VarInfo> vs = vars(t1);
  collectVars(t2, vs);
  detail::Space space(vs, d);
  space.size(d);
  detail::Compiled c1(t1, space.slots), c2(t2, space.slots);
  std::optional<Valuation> witness;
  const bool formulas = t1.type().kind == Type::Kind::Bool && t2.type().kind == Type::Kind::Bool;
  space.forEach([&](const std::vector<Value>& env) {
    bool differ = formulas ? c1.test(env) != c2.test(env) : !(c1.eval(env) == c2.eval(env));
    if (differ) witness = space.valuation(env);
    return !differ;
  });
  return witness;
}

std::optional<Valuation> findModel(const Term& t, const DomainSpec& d) {
  detail::Space space(vars(t), d);
  space.size(d);
  detail::Compiled c(t, space.slots);
  std::optional<Valuation> witness;
  space.forEach([&](const std::vector<Value>& env) {
    if (c.test(env)) witness = space.valuation(env);
    return !witness;
  });
  return witness;
}

bool semEquiv(const Term& t1, const Term& t2, const DomainSpec& d) {
  if (t1 == t2) {
    // Still enforce the cap so the answer never depends on syntax.
    detail::Space(vars(t1), d).size(d);
    return true;
  }
  return !findDifference(t1, t2, d);
}

bool semImplies(const Term& t1, const Term& t2, const DomainSpec& d) {
  return !findModel(conj({t1, neg(t2)}), d);
}

bool satisfiable(const Term& t, const DomainSpec& d) { return findModel(t, d).has_value(); }

bool compatible(const Assignment& a1, const Assignment& a2, const DomainSpec& d) {
  for (const auto& [k, e] : a1) {
    auto it = a2.find(k);
    if (it != a2.end() && !semEquiv(e, it->second, d)) return false;
  }
  return true;
}

Assignment unionAssign(const Assignment& a1, const Assignment& a2, const DomainSpec& d) {
  Assignment out = a1;
  for (const auto& [k, e] : a2) {
    auto it = out.find(k);
    if (it == out.end()) {
      out.emplace(k, e);
    } else if (!semEquiv(it->second, e, d)) {
      throw Error(ErrorCode::IncompatibleAssignments,
                  k.str() + " := " + it->second.str() + " vs " + k.str() + " := " + e.str());
    }
  }
  return out;
}

Term assignToFormula(const Assignment& a, const SortTable& sorts) {
  std::vector<Term> eqs;
  for (const auto& [k, e] : a) {
    if (!e.isGround()) throw Error(ErrorCode::NonGroundImage, k.str() + " := " + e.str());
    auto it = sorts.find(k.name);
    if (it == sorts.end()) throw Error(ErrorCode::UnknownGateOrVariable, "unknown variable " + k.name);
    eqs.push_back(equals(Term::variable(k, it->second, e.type()), e));
  }
  return conj(eqs);
}

std::string str(const Assignment& a) {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, e] : a) {
    if (!first) s += ", ";
    first = false;
    s += k.str() + " := " + e.str();
  }
  return s + "}";
}

std::string str(const Valuation& v) {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, x] : v) {
    if (!first) s += ", ";
    first = false;
    s += k.str() + " = " + x.str();
  }
  return s + "}";
}

}  // namespace bddts

#include "bddts/domain.hpp"

#include "bddts/error.hpp"

namespace bddts {

Type Type::listOf(Type element) {
  return {Kind::List, {}, std::make_shared<const Type>(std::move(element))};
}

std::string Type::str() const {
  switch (kind) {
    case Kind::Bool: return "Bool";
    case Kind::Int: return "Int";
    case Kind::Enum: return enumSort;
    case Kind::List: return "List<" + element->str() + ">";
    case Kind::Any: return "?";
  }
  return "?";
}

bool typesMatch(const Type& a, const Type& b) {
  if (a.kind == Type::Kind::Any || b.kind == Type::Kind::Any) return true;
  if (a.kind != b.kind) return false;
  if (a.kind == Type::Kind::Enum) return a.enumSort == b.enumSort;
  if (a.kind == Type::Kind::List) return typesMatch(*a.element, *b.element);
  return true;
}

DomainSpec::DomainSpec() {
  Sort b;
  b.name = kBoolSort;
  b.kind = Sort::Kind::Bool;
  entries_[b.name] = {b, {Value::boolean(false), Value::boolean(true)}};
}

namespace {

void sequences(const std::vector<Value>& elems, int maxLen, std::vector<Value>& prefix,
               std::vector<Value>& out) {
  out.push_back(Value::list(prefix));
  if (static_cast<int>(prefix.size()) == maxLen) return;
  for (const auto& e : elems) {
    prefix.push_back(e);
    sequences(elems, maxLen, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

void DomainSpec::add(const Sort& sort) {
  auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidModel, "sort '" + sort.name + "': " + why);
  };
  if (sort.name.empty()) bad("empty name");
  if (auto it = entries_.find(sort.name); it != entries_.end()) {
    if (it->second.sort == sort) return;
    bad("conflicting redeclaration");
  }
  std::vector<Value> u;
  switch (sort.kind) {
    case Sort::Kind::Bool:
      u = {Value::boolean(false), Value::boolean(true)};
      break;
    case Sort::Kind::Int:
      if (sort.lo > sort.hi) bad("lo > hi");
      if (sort.hi - sort.lo >= static_cast<std::int64_t>(cap_)) bad("range exceeds valuation cap");
      for (auto i = sort.lo; i <= sort.hi; ++i) u.push_back(Value::integer(i));
      break;
    case Sort::Kind::Enum:
      if (sort.literals.empty()) bad("no literals");
      for (const auto& l : sort.literals) {
        for (const auto& v : u) {
          if (v.asEnum().name == l) bad("duplicate literal " + l);
        }
        u.push_back(Value::enumeration(sort.name, l));
      }
      break;
    case Sort::Kind::List: {
      if (sort.maxLength < 0) bad("negative max length");
      if (!has(sort.element)) bad("unknown element sort " + sort.element);
      const auto& elems = universe(sort.element);
      double count = 0, pow = 1;
      for (int k = 0; k <= sort.maxLength; ++k, pow *= static_cast<double>(elems.size())) count += pow;
      if (count > static_cast<double>(cap_)) bad("universe exceeds valuation cap");
      std::vector<Value> prefix;
      sequences(elems, sort.maxLength, prefix, u);
      break;
    }
  }
  entries_[sort.name] = {sort, std::move(u)};
  order_.push_back(sort.name);
}

bool DomainSpec::has(const std::string& name) const { return entries_.count(name) != 0; }

const Sort& DomainSpec::sort(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error(ErrorCode::SortMismatch, "unknown sort '" + name + "'");
  return it->second.sort;
}

const std::vector<Value>& DomainSpec::universe(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error(ErrorCode::SortMismatch, "unknown sort '" + name + "'");
  return it->second.universe;
}

Type DomainSpec::typeOf(const std::string& name) const {
  const Sort& s = sort(name);
  switch (s.kind) {
    case Sort::Kind::Bool: return Type::boolean();
    case Sort::Kind::Int: return Type::integer();
    case Sort::Kind::Enum: return Type::enumeration(s.name);
    case Sort::Kind::List: return Type::listOf(typeOf(s.element));
  }
  return Type::any();
}

std::vector<Sort> DomainSpec::declared() const {
  std::vector<Sort> out;
  for (const auto& n : order_) out.push_back(entries_.at(n).sort);
  return out;
}

}  // namespace bddts

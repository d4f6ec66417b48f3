#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bddts/value.hpp"

namespace bddts {

struct Sort {
  enum class Kind { Bool, Int, Enum, List };

  std::string name;
  Kind kind = Kind::Bool;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<std::string> literals;  // Enum
  std::string element;                // List: element sort name
  int maxLength = 0;                  // List

  friend bool operator==(const Sort&, const Sort&) = default;
};

// Static type of a term. Integer sorts collapse to Int; lists are typed by
// their element type. Any is only produced for the empty list literal.
struct Type {
  enum class Kind { Bool, Int, Enum, List, Any };

  Kind kind = Kind::Bool;
  std::string enumSort;
  std::shared_ptr<const Type> element;

  static Type boolean() { return {}; }
  static Type integer() { return {Kind::Int, {}, nullptr}; }
  static Type enumeration(std::string sort) { return {Kind::Enum, std::move(sort), nullptr}; }
  static Type listOf(Type element);
  static Type any() { return {Kind::Any, {}, nullptr}; }

  std::string str() const;
};

// Compatibility, not identity: Any unifies with everything.
bool typesMatch(const Type& a, const Type& b);

inline constexpr const char* kBoolSort = "Bool";
inline constexpr std::uint64_t kDefaultValuationCap = 1'000'000;

class DomainSpec {
 public:
  // The builtin Bool sort is always present.
  DomainSpec();

  // Throws InvalidModel on an ill-formed or duplicate sort; redeclaring an
  // identical sort is accepted.
  void add(const Sort& sort);

  bool has(const std::string& name) const;
  const Sort& sort(const std::string& name) const;
  const std::vector<Value>& universe(const std::string& name) const;
  Type typeOf(const std::string& name) const;

  // Declared sorts in insertion order, builtin Bool excluded.
  std::vector<Sort> declared() const;

  std::uint64_t valuationCap() const { return cap_; }
  void setValuationCap(std::uint64_t cap) { cap_ = cap; }

 private:
  struct Entry {
    Sort sort;
    std::vector<Value> universe;
  };
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
  std::uint64_t cap_ = kDefaultValuationCap;
};

}  // namespace bddts

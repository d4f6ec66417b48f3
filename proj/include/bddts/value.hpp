#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace bddts {

// Enumeration literals are interned; equal (sort, name) pairs share one
// address for the lifetime of the process.
struct EnumLiteral {
  std::string sort;
  std::string name;
};

const EnumLiteral* internEnumLiteral(std::string_view sort, std::string_view name);

class Value {
 public:
  enum class Kind : std::uint8_t { Bool, Int, Enum, List };

  Value() = default;

  static Value boolean(bool b);
  static Value integer(std::int64_t i);
  static Value enumeration(std::string_view sort, std::string_view literal);
  static Value list(std::vector<Value> items);

  Kind kind() const { return kind_; }
  bool asBool() const { return num_ != 0; }
  std::int64_t asInt() const { return num_; }
  const EnumLiteral& asEnum() const { return *lit_; }
  const std::vector<Value>& items() const;

  // Term-syntax rendering: true, 3, Sort::Lit, [1,2].
  std::string str() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  Kind kind_ = Kind::Bool;
  std::int64_t num_ = 0;
  const EnumLiteral* lit_ = nullptr;
  std::shared_ptr<const std::vector<Value>> items_;
};

}  // namespace bddts

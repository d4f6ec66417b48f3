#include "bddts/value.hpp"

#include <map>
#include <mutex>

namespace bddts {

const EnumLiteral* internEnumLiteral(std::string_view sort, std::string_view name) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::string>, std::unique_ptr<EnumLiteral>> table;
  std::lock_guard lock(mu);
  auto key = std::make_pair(std::string(sort), std::string(name));
  auto it = table.find(key);
  if (it == table.end()) {
    auto lit = std::make_unique<EnumLiteral>(EnumLiteral{key.first, key.second});
    it = table.emplace(std::move(key), std::move(lit)).first;
  }
  return it->second.get();
}

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Bool;
  v.num_ = b ? 1 : 0;
  return v;
}

Value Value::integer(std::int64_t i) {
  Value v;
  v.kind_ = Kind::Int;
  v.num_ = i;
  return v;
}

Value Value::enumeration(std::string_view sort, std::string_view literal) {
  Value v;
  v.kind_ = Kind::Enum;
  v.lit_ = internEnumLiteral(sort, literal);
  return v;
}

Value Value::list(std::vector<Value> items) {
  Value v;
  v.kind_ = Kind::List;
  v.items_ = std::make_shared<const std::vector<Value>>(std::move(items));
  return v;
}

const std::vector<Value>& Value::items() const {
  static const std::vector<Value> empty;
  return items_ ? *items_ : empty;
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::Bool: return num_ ? "true" : "false";
    case Kind::Int: return std::to_string(num_);
    case Kind::Enum: return lit_->sort + "::" + lit_->name;
    case Kind::List: {
      std::string s = "[";
      const auto& xs = items();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += xs[i].str();
      }
      return s + "]";
    }
  }
  return "?";
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Value::Kind::Bool:
    case Value::Kind::Int: return a.num_ == b.num_;
    case Value::Kind::Enum: return a.lit_ == b.lit_;
    case Value::Kind::List: return a.items_ == b.items_ || a.items() == b.items();
  }
  return false;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Value::Kind::Bool:
    case Value::Kind::Int: return a.num_ <=> b.num_;
    case Value::Kind::Enum:
      if (a.lit_ == b.lit_) return std::strong_ordering::equal;
      if (auto c = a.lit_->sort <=> b.lit_->sort; c != 0) return c;
      return a.lit_->name <=> b.lit_->name;
    case Value::Kind::List: {
      const auto& xs = a.items();
      const auto& ys = b.items();
      for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (auto c = xs[i] <=> ys[i]; c != 0) return c;
      }
      return xs.size() <=> ys.size();
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace bddts

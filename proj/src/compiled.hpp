#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "bddts/domain.hpp"
#include "bddts/term.hpp"

namespace bddts::detail {

// A term flattened into an array with variables resolved to slot indices,
// for repeated evaluation over enumerated environments.
class Compiled {
 public:
  Compiled(const Term& t, const std::map<VarKey, int>& slots);

  Value eval(const std::vector<Value>& env) const { return value(root_, env); }
  bool test(const std::vector<Value>& env) const { return boolean(root_, env); }

 private:
  struct Node {
    Op op;
    int slot = -1;
    Value constant;
    int first = 0;
    int count = 0;
  };

  int add(const Term& t, const std::map<VarKey, int>& slots,
          std::unordered_map<const void*, int>& seen);
  Value value(int i, const std::vector<Value>& env) const;
  bool boolean(int i, const std::vector<Value>& env) const;
  std::int64_t integer(int i, const std::vector<Value>& env) const;

  std::vector<Node> nodes_;
  std::vector<int> children_;
  int root_ = 0;
};

// The product space of a set of variables over their sort universes.
struct Space {
  std::vector<VarInfo> vars;
  std::vector<const std::vector<Value>*> universes;
  std::map<VarKey, int> slots;

  Space(const std::set<VarInfo>& vs, const DomainSpec& d);
  // Throws DomainTooLarge past the domain cap.
  std::uint64_t size(const DomainSpec& d) const;
  // Calls f on every environment until it returns false; returns whether the
  // enumeration ran to completion.
  bool forEach(const std::function<bool(const std::vector<Value>&)>& f) const;
  Valuation valuation(const std::vector<Value>& env) const;
};

}  // namespace bddts::detail

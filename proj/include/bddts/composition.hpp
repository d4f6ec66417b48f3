#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bddts/model.hpp"

namespace bddts {

// "(a,b)", "(a,⊥)", "(⊥,b)".
std::string composedName(const std::optional<std::string>& left, const std::optional<std::string>& right);
inline constexpr const char* kBottomTag = "⊥";

// Throws IncompatibleModels, NotSaturated, or IncompatibleAssignments.
Bddts disjunction(const Bddts& b1, const Bddts& b2, const DomainSpec& d);

struct IsoWitness {
  std::map<std::string, std::string> locations;
  std::vector<std::pair<std::size_t, std::size_t>> switches;  // indices into b1/b2 switch lists
};

inline constexpr std::size_t kDefaultIsoCap = 12;

// Throws IncompatibleModels, or DomainTooLarge when either model has more
// than cap locations.
std::optional<IsoWitness> isomorphic(const Bddts& b1, const Bddts& b2, const DomainSpec& d,
                                     std::size_t cap = kDefaultIsoCap);

}  // namespace bddts

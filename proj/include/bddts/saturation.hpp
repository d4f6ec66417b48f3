#pragma once

#include <string>
#include <vector>

#include "bddts/model.hpp"

namespace bddts {

struct SaturationResult {
  Bddts model;
  std::string topSink;
  std::string botSink;
  std::vector<Switch> added;
  std::vector<Switch> modifiedInitial;
};

// Throws ValidationFailed when b does not validate under d.
SaturationResult saturate(const Bddts& b, const DomainSpec& d);

struct SaturationReport {
  struct Incomplete {
    std::string location;
    std::string gate;
    Valuation witness;  // no guard holds
  };
  struct MissingOutput {
    std::string location;
    std::string gate;
  };

  std::vector<Incomplete> incomplete;      // clause 1
  std::vector<MissingOutput> missing;      // clause 2
  std::vector<std::size_t> initialSwitches;  // clause 3, indices into b.switches

  bool ok() const { return incomplete.empty() && missing.empty() && initialSwitches.empty(); }
  std::string str() const;
};

SaturationReport isSaturated(const Bddts& b, const DomainSpec& d);

}  // namespace bddts

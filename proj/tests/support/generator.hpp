#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bddts/model.hpp"

namespace bddts::testing {

using Rng = std::mt19937_64;

struct GenOptions {
  int minLocations = 2;
  int maxLocations = 4;
  int maxGates = 2;
  int maxParams = 2;
  bool allowInputs = true;
  // Every gate gets at least one switch out of the initial location.
  bool initialEnablesAllGates = false;
  // At least one output gate.
  bool requireOutputGate = false;
  // Switches may lead back into the initial location.
  bool reenterInitial = true;
  double goalRate = 0.4;
  double trivialIgRate = 0.5;
};

// Sorts, variables, gates and per-gate assignment templates shared by all
// models drawn for one pair or triple, so that they are compatible.
struct Signature {
  std::vector<Sort> sorts;
  std::vector<Variable> variables;
  std::vector<Gate> gates;
  std::map<std::string, std::map<std::string, std::string>> templates;  // gate -> var -> term text
};

Signature randomSignature(Rng& rng, const GenOptions& opt);

// A valid, output-rich, unsaturated model over the signature.
Bddts randomModel(const Signature& sig, Rng& rng, const GenOptions& opt);

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline int between(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace bddts::testing

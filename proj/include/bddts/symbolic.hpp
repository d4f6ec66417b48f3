#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bddts/model.hpp"

namespace bddts {

struct Label {
  std::string gate;
  Term guard;
  Assignment assign;
};

using Path = std::vector<Label>;
using Sigma = std::vector<std::string>;  // gate names

struct LocatedPath {
  Path path;
  std::vector<std::size_t> switches;  // indices into the model's switch list
  std::string end;
};

std::string str(const Sigma& s);
Sigma sigmaOf(const Path& p);

// All paths of length <= maxLen from the initial location, shortest first.
std::vector<LocatedPath> enumeratePaths(const Bddts& b, int maxLen);

// ini as a ground assignment over V; throws IniNotTotal.
Assignment groundIni(const Bddts& b, const Valuation& ini);

Assignment pathAssignment(const Bddts& b, const Path& p, const Valuation& ini);
Term pathCondition(const Bddts& b, const Path& p, const Valuation& ini);

// Both throw NotSaturated unless b passes isSaturated under d.
Term executionCondition(const Bddts& b, const Valuation& ini, const Sigma& sigma, const DomainSpec& d);
Term goalImplication(const Bddts& b, const Valuation& ini, const Sigma& sigma, const DomainSpec& d);

struct SymbolicSummary {
  Sigma sigma;
  Term ec;
  Term gi;
};

struct SummaryOptions {
  // Constant-fold path conditions as they are built and drop paths whose
  // condition folds to false. Results are semantically equal either way.
  bool fold = true;
};

// EC and GI for every σ with |σ| <= maxLen in one traversal. σ without a
// realizing path map to EC = false, GI = true and are omitted. No saturation
// check.
std::map<Sigma, SymbolicSummary> summaries(const Bddts& b, const Valuation& ini, int maxLen,
                                           SummaryOptions opts = {});

bool pathSubsumes(const Path& p1, const Path& p2, const DomainSpec& d);

std::vector<LocatedPath> locationPaths(const Bddts& b, const Sigma& sigma, const std::string& loc);
std::vector<LocatedPath> locationPathsSubsuming(const Bddts& b, const Sigma& sigma, const std::string& loc,
                                                const Path& p, const DomainSpec& d);

// Every σ over the gates with |σ| <= k, breadth-first, lexicographic per length.
std::vector<Sigma> allSigmas(const std::vector<Gate>& gates, int k);

// Every total ground initialization over V; throws DomainTooLarge.
std::vector<Valuation> allInis(const Bddts& b, const DomainSpec& d);

struct EquivalenceReport {
  struct Counterexample {
    Valuation ini;
    Sigma sigma;
    std::string side;  // "EC" or "GI"
    Valuation witness;
    Term left;
    Term right;
  };

  bool equivalent = true;
  int bound = 0;
  std::size_t checks = 0;
  std::optional<Counterexample> counterexample;

  std::string str() const;
};

EquivalenceReport testingEquivalent(const std::vector<Bddts>& set1, const std::vector<Bddts>& set2,
                                    const std::vector<Valuation>& inis, int maxSigmaLen, const DomainSpec& d);

}  // namespace bddts

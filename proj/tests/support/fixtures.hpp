#pragma once

#include <string>
#include <vector>

#include "bddts/domain.hpp"
#include "bddts/model.hpp"
#include "bddts/term.hpp"
#include "generator.hpp"

namespace bddts::testing {

// Sorts Small (-2..2), Mode {A,B,C}, Badge (1233..1235), Badges (list of
// Badge up to length 2); variables x, y : Small; p, q : Bool; m : Mode;
// b : Badge; xs : Badges.
struct Playground {
  DomainSpec d;
  SortTable vars;

  Playground();

  Term operator()(const std::string& text) const;
  Term var(const std::string& name, int time = 0) const;
  Value val(const std::string& text, const std::string& sort) const;
};

// A random well-typed boolean term over the playground variables at the
// given time indices.
Term randomBoolTerm(Rng& rng, const Playground& pg, int depth, int maxTime = 0);

// Brute force over all valuations of the given variables; independent of
// the library's own enumeration.
std::vector<Valuation> allValuations(const std::vector<VarInfo>& vs, const DomainSpec& d);

std::vector<VarInfo> varList(const Term& a, const Term& b);

std::string readFile(const std::string& path);

// A model from the data directory.
Bddts dataModel(const std::string& file);

// A model over a fixed small vocabulary: sort N = 0..2; model variables
// n : N and f : Bool; context variable c : N; output gate out(o : N)
// renaming c to o; input gate in(i : N). `body` supplies the locations,
// initial, ig and switches members of the model JSON.
Bddts miniModel(const std::string& body);

}  // namespace bddts::testing

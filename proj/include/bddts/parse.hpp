#pragma once

#include <map>
#include <string>
#include <string_view>

#include "bddts/domain.hpp"
#include "bddts/term.hpp"

namespace bddts {

// Throws ParseError (with column), UnknownGateOrVariable or SortMismatch.
Term parseTerm(std::string_view text, const SortTable& vars, const DomainSpec& d);

// Parses a constant of the given sort, in term syntax.
Value parseValue(std::string_view text, const std::string& sort, const DomainSpec& d);

}  // namespace bddts

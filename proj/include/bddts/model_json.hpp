#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bddts/model.hpp"

namespace bddts {

using Json = nlohmann::ordered_json;

Json toJson(const Sort& s);
Sort sortFromJson(const Json& j);

// {"sorts": [...]}; unknown fields rejected.
DomainSpec domainFromJson(const Json& j);
Json toJson(const DomainSpec& d);

Json toJson(const Value& v);
Value valueFromJson(const Json& j, const std::string& sort, const DomainSpec& d);
// Without a sort: enumeration literals must be qualified, lists are untyped.
Value valueFromJson(const Json& j);

Json toJson(const Bddts& b);
// Throws InvalidModel on structural problems (unknown fields, bad shapes) and
// the term errors on bad term strings. Does not run validate().
Bddts modelFromJson(const Json& j);

// Ground, total-over-V initialization, written {"var": value}.
Valuation iniFromJson(const Json& j, const Bddts& b, const DomainSpec& d);
Json toJson(const Valuation& v);

Json readJsonFile(const std::filesystem::path& p);
void writeFile(const std::filesystem::path& p, const std::string& text);

}  // namespace bddts

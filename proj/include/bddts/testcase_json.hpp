#pragma once

#include "bddts/concrete.hpp"
#include "bddts/model_json.hpp"

namespace bddts {

Json toJson(const Gate& g);
Gate gateFromJson(const Json& j);

Json toJson(const TestCase& tc);
TestCase testCaseFromJson(const Json& j);

Json toJson(const GateValue& u);
Json toJson(const Verdict& v);

}  // namespace bddts

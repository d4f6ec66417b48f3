#pragma once

#include <string>

#include "bddts/concrete.hpp"
#include "bddts/model.hpp"

namespace bddts {

std::string toDot(const Bddts& b);
std::string toDot(const TestCase& tc);

}  // namespace bddts

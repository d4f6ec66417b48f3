#pragma once

#include <string>
#include <string_view>

#include "bddts/model.hpp"

namespace bddts {

// Line-oriented scenario DSL:
//
//   sort Badge int 1233 1235          (also: bool, enum A B ..., list Elem N)
//   model A_badge : BadgeList
//   context P_badge : Badge
//   output trigger_door(door_id : DoorId, command : DoorState) renames Door -> command
//   Scenario: title
//   Given <predicate>
//   When !gate(args) [if <guard>] [set x := e; y := e]
//   Then !gate(args) [if <guard>] [set ...]
//   And expect <predicate>
//
// `!` marks an output gate and `?` an input gate; `And` repeats the previous
// keyword; `#` starts a comment line. Throws ParseError (with line and
// column) or UnknownGateOrVariable.
Bddts parseScenario(std::string_view text);

}  // namespace bddts

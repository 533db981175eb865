#pragma once

#include <string>

#include "raed/generate.hpp"
#include "raed/instance.hpp"
#include "raed/multi.hpp"
#include "raed/schedule.hpp"

namespace raed {

// JSON round-trips. Integers are carried exactly; the unservable sentinel
// is stored as 0 in the requirement tensor (real requirements are >= 1).
// Parsers throw std::invalid_argument on malformed input.

std::string instance_to_json(const Instance& inst, int indent = 2);
Instance instance_from_json(const std::string& text);

std::string outcome_to_json(const ScheduleOutcome& oc, int indent = 2);
ScheduleOutcome outcome_from_json(const std::string& text);

std::string association_to_json(const AssociationOutcome& out, int indent = 2);

// Generation parameters plus dimensions, as accepted by the command-line
// front end. Unknown keys are rejected.
struct GenerateSpec {
  GenerationParams params;
  Dims dims;
};
GenerateSpec generate_spec_from_json(const std::string& text);

}  // namespace raed

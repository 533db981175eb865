#pragma once

#include <string>

#include "raed/instance.hpp"

namespace raed {

// Writes the assignment problem as an LP-format text model: binary
// placement variables x_u_b_c_t, continuous battery-level variables z_b_t,
// and the full constraint family (per-cell exclusivity, one channel and
// one station per user, battery recursion and gating, all-or-nothing
// chunking with big-M equal to the horizon, deadlines). The objective
// weights each placement by the reciprocal of the user's requirement, so
// the optimum equals the number of served users. Pairs that can never
// carry a user are fixed to zero. Output is deterministic, byte for byte.
// Guarded to small instances (U*B*C*T <= 2000): argument error beyond.
std::string export_ilp(const Instance& inst);

}  // namespace raed

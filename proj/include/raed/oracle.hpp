#pragma once

#include <string>
#include <vector>

#include "raed/instance.hpp"
#include "raed/multi.hpp"

namespace raed {

// Size guards for the exact solver. Exceeding the dimensional caps is an
// argument error; exhausting max_nodes raises LimitError (never a wrong or
// partial answer).
struct OracleLimits {
  int max_users = 20;
  int max_bs = 4;
  int max_channels = 2;
  int max_slots = 12;
  long long max_nodes = 200'000'000;
};

struct OracleResult {
  int optimal = 0;
  AssociationOutcome witness;
  long long nodes = 0;
};

// Maximum number of users that can be served, over every choice of user ->
// (station, channel) assignment and every feasible schedule. Exact
// branch-and-bound; the witness is a concrete schedule attaining the
// optimum and is internally revalidated before being returned.
OracleResult solve_exact(const Instance& inst, const OracleLimits& limits = {});

// Classic drop-largest sweep for single-machine scheduling with deadlines:
// the maximum number of jobs that can meet their deadlines when the
// machine is free from slot 1 and energy is not a constraint. Jobs with
// nu > T (or the unservable sentinel) are skipped.
int moore_hodgson(const std::vector<int>& nu, const std::vector<int>& deadline, int T);

// Independent full check of an association outcome against an instance:
// served sets disjoint across stations, per-station schedules feasible,
// totals consistent. Returns an empty string when everything holds,
// otherwise a description of the first violation.
std::string validate_association(const Instance& inst, const AssociationOutcome& out);

}  // namespace raed

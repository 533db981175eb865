#pragma once

#include <vector>

#include "raed/schedule.hpp"
#include "raed/scsb.hpp"

namespace raed {

// How many back-to-back transmissions can start at each slot, given the
// arrival profile: capacity[t] is the largest busy run beginning at slot
// t+1 that never overdraws energy or the horizon.
struct CapacityProfile {
  std::vector<int> capacity;  // size T
  int best = 0;               // max over capacity
  int best_start = 1;         // 1-based slot attaining it (earliest)
  long long iterations = 0;   // fixed-point steps, for complexity checks
};

CapacityProfile budget(const std::vector<int>& arrivals);

struct PackItem {
  int id = 0;
  int nu = 0;
};

// Admits users smallest-requirement-first while the summed requirement
// fits the capacity, then schedules the admitted users consecutively from
// start_slot. arrivals is only used for ledger bookkeeping and must cover
// the packed block (budget's winning slot always satisfies this).
ScheduleOutcome pack(const std::vector<PackItem>& users, int capacity, int start_slot,
                     const std::vector<int>& arrivals, TiePolicy tie = TiePolicy::kDefault);

// Single-station scheduler for the case where every deadline equals the
// horizon: pick the best starting slot by capacity, then pack. Serves the
// same number of users as schedule_scsb1 in that regime, at much lower
// cost.
ScheduleOutcome schedule_scsb2(const BsView& view, TiePolicy tie = TiePolicy::kDefault);

}  // namespace raed

#pragma once

#include <functional>
#include <vector>

#include "raed/schedule.hpp"

namespace raed {

// Deterministic tie handling. kDefault resolves every tie toward the
// smallest index; kAdversarial mirrors each rule to the opposite pole,
// which is useful for probing how sensitive an outcome is to tie order.
enum class TiePolicy {
  kDefault,
  kAdversarial,
};

struct EvictEvent {
  int user = 0;     // user being processed when the eviction happened
  int evicted = 0;  // user removed
  std::vector<int> candidates;    // served set the choice was made over
  std::vector<int> candidate_nu;  // matching slot requirements
};

// Observation hooks for tests: a snapshot after each user's iteration and
// a record of every eviction decision.
struct SchedulerProbe {
  std::function<void(const Schedule&, const EnergyLedger&)> on_user_done;
  std::function<void(const EvictEvent&)> on_evict;
};

// Single-station, single-channel scheduler: earliest-deadline-first
// insertion with energy-aware placement; when a user cannot be finished in
// time, the largest user is evicted and the remaining allocation compacted
// toward the front. Maximizes the number of served users.
ScheduleOutcome schedule_scsb1(const BsView& view, TiePolicy tie = TiePolicy::kDefault,
                               const SchedulerProbe* probe = nullptr);

struct UpdateResult {
  Schedule schedule;
  EnergyLedger ledger;
  std::vector<int> served;
  int t = 1;  // scan cursors handed back to the caller's placement loop
  int r = 1;
};

// Removes one served user and compacts the remaining allocation on that
// user's channel: every later occupied cell moves to the earliest freed
// cell, reusing the energy unit already parked there; units left on freed
// cells return to the residual pool at their original arrival slot.
UpdateResult update_reschedule(const Schedule& s, const EnergyLedger& ledger, const BsView& view,
                               int evict_id);

namespace detail {

// In-place core of update_reschedule, shared by the schedulers. Assumes a
// per-(slot,channel) ledger. served must be sorted ascending.
void evict_and_compact(Schedule& s, EnergyLedger& ledger, int evict_id);

}  // namespace detail

}  // namespace raed

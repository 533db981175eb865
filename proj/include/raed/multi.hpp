#pragma once

#include <map>
#include <vector>

#include "raed/instance.hpp"
#include "raed/schedule.hpp"
#include "raed/scsb.hpp"

namespace raed {

// Channel chosen for each user of a view; -1 when no channel can carry the
// user within the horizon.
struct ChannelAssignment {
  std::vector<int> channel_of;  // parallel to view.users
};

// Cheapest channel per user (fewest required slots); ties go to the
// channel with fewer users assigned so far, then the lower index. Users
// are considered in view order.
ChannelAssignment allocate_channels(const BsView& view, TiePolicy tie = TiePolicy::kDefault);

// Single-station scheduler over a slots-by-channels grid: channels are
// fixed per user up front, then users are inserted earliest-deadline-first
// with the same eviction-and-compact discipline as schedule_scsb1, all
// channels drawing on the station's one energy pool.
ScheduleOutcome schedule_mcsb(const BsView& view, TiePolicy tie = TiePolicy::kDefault,
                              EnergyChargeMode mode = EnergyChargeMode::kPerSlotChannel,
                              const SchedulerProbe* probe = nullptr);

// Result of associating users to stations: the committed schedule of every
// station that serves someone, in commit order.
struct AssociationOutcome {
  std::map<int, ScheduleOutcome> per_bs;  // 1-based station id -> outcome
  std::vector<int> used_bs;               // commit order, 1-based ids
  std::vector<int> committed_counts;      // served count per commit, same order
  int served_total = 0;

  bool operator==(const AssociationOutcome&) const = default;
};

// Greedy association for single-channel instances: every remaining station
// schedules the remaining users with schedule_scsb1; the station serving
// the most users is committed and its users withdrawn. Serves at least
// half the optimum.
AssociationOutcome schedule_scmb(const Instance& inst, TiePolicy tie = TiePolicy::kDefault,
                                 const SchedulerProbe* probe = nullptr);

// Same association loop with schedule_mcsb as the per-station scheduler.
AssociationOutcome schedule_mcmb(const Instance& inst, TiePolicy tie = TiePolicy::kDefault,
                                 EnergyChargeMode mode = EnergyChargeMode::kPerSlotChannel,
                                 const SchedulerProbe* probe = nullptr);

}  // namespace raed

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "raed/instance.hpp"

namespace raed {

// How transmissions draw from the harvested-energy pool.
//   kPerSlotChannel: every active (slot, channel) cell costs one unit.
//   kPerSlot:        a slot costs one unit if at least one channel is active.
enum class EnergyChargeMode {
  kPerSlotChannel,
  kPerSlot,
};

// Slot-by-channel allocation. grid holds the 1-based user id occupying a
// cell, or 0 for idle. served lists the scheduled user ids in ascending
// order; a served user occupies exactly its required number of cells, all
// on one channel.
struct Schedule {
  int num_slots = 0;
  int num_channels = 1;
  std::vector<int> grid;  // [t][c], row-major, size num_slots * num_channels

  int at(int t, int c) const { return grid[static_cast<size_t>(t) * num_channels + c]; }
  int& at(int t, int c) { return grid[static_cast<size_t>(t) * num_channels + c]; }

  std::vector<int> served;

  bool operator==(const Schedule&) const = default;
};

// Which arrival paid for which busy cell. provenance[t][c] is the 1-based
// arrival slot of the unit consumed by that cell (0 when idle); residual is
// what remains of each slot's arrivals. Invariant: residual plus consumed
// units equals the original profile, and every unit is spent no earlier
// than it arrived.
struct EnergyLedger {
  std::vector<int> residual;    // size num_slots
  std::vector<int> provenance;  // size num_slots * num_channels

  bool operator==(const EnergyLedger&) const = default;
};

struct ScheduleOutcome {
  Schedule schedule;
  EnergyLedger ledger;
  int served_count = 0;

  bool operator==(const ScheduleOutcome&) const = default;
};

struct Feasibility {
  bool ok = true;
  std::string detail;  // first violation found, empty when ok
};

// Checks a schedule against one station's view: consistent grid/served
// sets, exact per-user slot counts on a single channel, deadlines met, and
// a non-negative running energy balance under the given charge mode.
// Dimension mismatches throw std::invalid_argument.
Feasibility check_schedule(const Schedule& s, const BsView& view,
                           EnergyChargeMode mode = EnergyChargeMode::kPerSlotChannel);

// Builds a ledger for an already-feasible schedule by paying each busy cell
// with the earliest unspent arrival. Throws if the schedule is infeasible.
EnergyLedger make_ledger(const Schedule& s, const BsView& view,
                         EnergyChargeMode mode = EnergyChargeMode::kPerSlotChannel);

// Verifies ledger bookkeeping against a schedule: provenance exactly on
// busy cells, units never spent before arrival, unit conservation.
Feasibility check_ledger(const Schedule& s, const EnergyLedger& ledger, const BsView& view,
                         EnergyChargeMode mode = EnergyChargeMode::kPerSlotChannel);

// First and last busy slot (1-based) of a served user. Throws
// std::invalid_argument if the user occupies no cell.
std::pair<int, int> starting_completion(const Schedule& s, int user_id);

// Moves every served user to the contiguous block ending at its original
// completion slot. Requires a feasible schedule in which, per channel, the
// idle gaps inside a user's span contain no other user (which holds for
// every schedule the schedulers here emit). Identity on gap-free input.
Schedule to_nonpreemptive(const Schedule& s, const BsView& view);

// Fixed-width text rendering of the grid plus the arrival row, one line
// per channel. Debugging aid for small instances.
std::string render_schedule(const Schedule& s, const std::vector<int>& energy);

}  // namespace raed

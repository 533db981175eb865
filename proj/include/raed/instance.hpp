#pragma once

#include <vector>

#include "raed/types.hpp"

namespace raed {

struct UserRequest {
  long long size_bits = 0;
  int deadline = 0;  // 1-based slot index, <= num_slots
};

// Harvested-energy arrivals per base station and slot, in units of one
// transmission-slot's worth of power.
struct EnergyProfile {
  int num_bs = 0;
  int num_slots = 0;
  std::vector<int> arrivals;  // [b][t], row-major

  int at(int b, int t) const { return arrivals[static_cast<size_t>(b) * num_slots + t]; }
  int& at(int b, int t) { return arrivals[static_cast<size_t>(b) * num_slots + t]; }
};

// One user as seen by a single base station: deadline plus the per-channel
// slot requirement. `nu[c] == kUnservable` marks a channel that cannot carry
// this user at all.
struct BsUser {
  int id = 0;  // global 1-based user id
  int deadline = 0;
  std::vector<int> nu;  // size num_channels
};

// Single-base-station slice of an instance. All schedulers operate on this.
struct BsView {
  int num_slots = 0;
  int num_channels = 1;
  std::vector<int> energy;  // arrivals A[t], size num_slots, index 0 = slot 1
  std::vector<BsUser> users;
};

// Full problem instance. Requirements are precomputed per (user, bs,
// channel); values > num_slots are collapsed to kUnservable at build time.
struct Instance {
  int num_slots = 0;
  int num_bs = 0;
  int num_channels = 1;
  std::vector<UserRequest> users;
  std::vector<int> required;  // [u][b][c], row-major
  EnergyProfile energy;

  int num_users() const { return static_cast<int>(users.size()); }

  int nu(int u, int b, int c) const {
    return required[(static_cast<size_t>(u) * num_bs + b) * num_channels + c];
  }
  int& nu(int u, int b, int c) {
    return required[(static_cast<size_t>(u) * num_bs + b) * num_channels + c];
  }

  // Throws std::invalid_argument on dimension mismatches or out-of-range
  // fields (deadlines outside 1..T, negative arrivals, nu < 1).
  void validate() const;

  // Slice for base station b (0-based), keeping every user. User ids in the
  // view are the global 1-based ids.
  BsView bs_view(int b) const;

  // Same, restricted to the given global user ids.
  BsView bs_view(int b, const std::vector<int>& user_ids) const;
};

}  // namespace raed

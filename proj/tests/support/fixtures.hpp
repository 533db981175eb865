#pragma once

#include <vector>

#include "raed/instance.hpp"
#include "raed/rng.hpp"
#include "raed/types.hpp"

// Random instances drawn directly over (nu, d, A) space. Broader coverage
// than the physical generator: sentinels, nu just past the horizon, zero
// energy and ties all appear with decent probability.

namespace raed::testsupport {

struct RandomSpec {
  int max_users = 6;
  int max_bs = 1;
  int max_channels = 1;
  int max_slots = 6;
  int max_arrival = 3;
  bool common_deadline = false;
  int sentinel_in_8 = 1;  // chance in 8 that a (u,b,c) pair is unservable
};

inline Instance random_instance(Rng& r, const RandomSpec& spec) {
  Instance inst;
  inst.num_slots = static_cast<int>(r.uniform_int(1, spec.max_slots));
  inst.num_bs = static_cast<int>(r.uniform_int(1, spec.max_bs));
  inst.num_channels = static_cast<int>(r.uniform_int(1, spec.max_channels));
  const int U = static_cast<int>(r.uniform_int(1, spec.max_users));
  for (int u = 0; u < U; ++u) {
    UserRequest req;
    req.size_bits = 1 + r.uniform_int(0, 1000);
    req.deadline = spec.common_deadline
                       ? inst.num_slots
                       : static_cast<int>(r.uniform_int(1, inst.num_slots));
    inst.users.push_back(req);
  }
  for (int u = 0; u < U; ++u)
    for (int b = 0; b < inst.num_bs; ++b)
      for (int c = 0; c < inst.num_channels; ++c) {
        if (r.uniform_int(1, 8) <= spec.sentinel_in_8)
          inst.required.push_back(kUnservable);
        else
          // up to one past the horizon: finite but unschedulable values
          // must be filtered by every algorithm, so keep them in the pool
          inst.required.push_back(static_cast<int>(r.uniform_int(1, inst.num_slots + 1)));
      }
  inst.energy.num_bs = inst.num_bs;
  inst.energy.num_slots = inst.num_slots;
  for (int i = 0; i < inst.num_bs * inst.num_slots; ++i)
    inst.energy.arrivals.push_back(static_cast<int>(r.uniform_int(0, spec.max_arrival)));
  inst.validate();
  return inst;
}

// Copy restricted to the users at the given 0-based positions, renumbered
// 1..k in the given order. Counts are invariant under the renumbering.
inline Instance sub_instance(const Instance& inst, const std::vector<int>& user_idx) {
  Instance out;
  out.num_slots = inst.num_slots;
  out.num_bs = inst.num_bs;
  out.num_channels = inst.num_channels;
  out.energy = inst.energy;
  for (int u : user_idx) {
    out.users.push_back(inst.users[u]);
    for (int b = 0; b < inst.num_bs; ++b)
      for (int c = 0; c < inst.num_channels; ++c) out.required.push_back(inst.nu(u, b, c));
  }
  out.validate();
  return out;
}

}  // namespace raed::testsupport

#include "raed/common_deadline.hpp"

#include <algorithm>
#include <stdexcept>

#include "raed/types.hpp"

namespace raed {

CapacityProfile budget(const std::vector<int>& arrivals) {
  const int T = static_cast<int>(arrivals.size());
  if (T < 1) throw std::invalid_argument("budget: empty arrival profile");
  for (int a : arrivals)
    if (a < 0) throw std::invalid_argument("budget: negative arrival");

  std::vector<long long> prefix(T + 1, 0);
  for (int t = 0; t < T; ++t) prefix[t + 1] = prefix[t] + arrivals[t];
  auto gamma = [&](long long t) {  // cumulative arrivals up to slot t, clamped
    return prefix[static_cast<size_t>(std::min<long long>(t, T))];
  };

  CapacityProfile out;
  out.capacity.assign(T, 0);
  for (int t = 1; t <= T; ++t) {
    long long tp = t + gamma(t);
    long long guard = 0;
    while (tp <= T && tp != t + gamma(tp)) {
      tp = t + gamma(tp);
      if (++guard > T)
        throw std::logic_error("budget: fixed point failed to settle");
      ++out.iterations;
    }
    ++out.iterations;
    out.capacity[t - 1] =
        static_cast<int>(std::min<long long>(gamma(tp), T - t + 1));
  }
  for (int t = 0; t < T; ++t)
    if (out.capacity[t] > out.best) {
      out.best = out.capacity[t];
      out.best_start = t + 1;
    }
  return out;
}

ScheduleOutcome pack(const std::vector<PackItem>& users, int capacity, int start_slot,
                     const std::vector<int>& arrivals, TiePolicy tie) {
  const int T = static_cast<int>(arrivals.size());
  if (T < 1) throw std::invalid_argument("pack: empty arrival profile");
  if (start_slot < 1 || start_slot > T) throw std::invalid_argument("pack: bad start slot");
  if (capacity < 0) throw std::invalid_argument("pack: negative capacity");

  std::vector<PackItem> order = users;
  std::sort(order.begin(), order.end(), [tie](const PackItem& a, const PackItem& b) {
    if (a.nu != b.nu) return a.nu < b.nu;
    return tie == TiePolicy::kDefault ? a.id < b.id : a.id > b.id;
  });

  ScheduleOutcome out;
  out.schedule.num_slots = T;
  out.schedule.num_channels = 1;
  out.schedule.grid.assign(T, 0);
  out.ledger.residual = arrivals;
  out.ledger.provenance.assign(T, 0);

  int slot = start_slot;  // 1-based next free slot
  long long used = 0;
  int cursor = 1;  // earliest arrival slot that may still hold units
  for (const PackItem& u : order) {
    if (!servable(u.nu)) continue;
    if (used + u.nu > capacity) continue;
    used += u.nu;
    for (int k = 0; k < u.nu; ++k, ++slot) {
      if (slot > T) throw std::logic_error("pack: capacity exceeds horizon");
      out.schedule.grid[slot - 1] = u.id;
      while (cursor <= slot && out.ledger.residual[cursor - 1] == 0) ++cursor;
      if (cursor > slot)
        throw std::logic_error("pack: arrivals cannot cover the packed block");
      --out.ledger.residual[cursor - 1];
      out.ledger.provenance[slot - 1] = cursor;
    }
    out.schedule.served.insert(
        std::lower_bound(out.schedule.served.begin(), out.schedule.served.end(), u.id), u.id);
  }
  out.served_count = static_cast<int>(out.schedule.served.size());
  return out;
}

ScheduleOutcome schedule_scsb2(const BsView& view, TiePolicy tie) {
  if (view.num_channels != 1)
    throw std::invalid_argument("schedule_scsb2: single-channel views only");
  for (const BsUser& u : view.users)
    if (u.deadline != view.num_slots)
      throw std::invalid_argument(
          "schedule_scsb2: requires every deadline to equal the horizon");
  CapacityProfile prof = budget(view.energy);
  std::vector<PackItem> items;
  items.reserve(view.users.size());
  for (const BsUser& u : view.users)
    if (servable(u.nu[0]) && u.nu[0] <= view.num_slots) items.push_back({u.id, u.nu[0]});
  return pack(items, prof.best, prof.best_start, view.energy, tie);
}

}  // namespace raed

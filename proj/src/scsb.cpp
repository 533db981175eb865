#include "raed/scsb.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

#include "raed/types.hpp"

namespace raed {

namespace detail {

void evict_and_compact(Schedule& s, EnergyLedger& ledger, int evict_id) {
  auto pos = std::lower_bound(s.served.begin(), s.served.end(), evict_id);
  if (pos == s.served.end() || *pos != evict_id)
    throw std::invalid_argument("evict: user " + std::to_string(evict_id) + " is not served");
  s.served.erase(pos);

  const int C = s.num_channels;
  int chan = -1;
  std::vector<int> own;  // slots of the evicted user, 0-based, ascending
  for (int t = 0; t < s.num_slots; ++t)
    for (int c = 0; c < C; ++c)
      if (s.at(t, c) == evict_id) {
        chan = c;
        own.push_back(t);
      }
  if (own.empty()) return;  // nothing placed yet, nothing to compact

  for (int t : own) s.at(t, chan) = 0;

  // Later occupants on the same channel slide into the earliest freed
  // cells. The unit parked on a freed cell arrived no later than that
  // slot, so the move is always energy-valid; the mover's own unit stays
  // behind on the newly freed cell.
  std::priority_queue<int, std::vector<int>, std::greater<int>> freed(own.begin(), own.end());
  std::vector<int> movers;
  for (int t = own.front() + 1; t < s.num_slots; ++t)
    if (s.at(t, chan) != 0) movers.push_back(t);
  for (int t : movers) {
    const int f = freed.top();
    freed.pop();
    s.at(f, chan) = s.at(t, chan);
    s.at(t, chan) = 0;
    freed.push(t);
  }

  while (!freed.empty()) {
    const int f = freed.top();
    freed.pop();
    int& prov = ledger.provenance[static_cast<size_t>(f) * C + chan];
    ++ledger.residual[prov - 1];
    prov = 0;
  }
}

}  // namespace detail

namespace {

struct UserRef {
  int id;
  int deadline;
  int nu;  // on the single channel
};

bool edf_before(const UserRef& a, const UserRef& b, TiePolicy tie) {
  if (a.deadline != b.deadline) return a.deadline < b.deadline;
  if (a.nu != b.nu) return a.nu < b.nu;
  return tie == TiePolicy::kDefault ? a.id < b.id : a.id > b.id;
}

void validate_view(const BsView& view) {
  if (view.num_slots < 1) throw std::invalid_argument("view: no slots");
  if (view.energy.size() != static_cast<size_t>(view.num_slots))
    throw std::invalid_argument("view: energy size mismatch");
  for (int a : view.energy)
    if (a < 0) throw std::invalid_argument("view: negative arrival");
  for (const BsUser& u : view.users) {
    if (u.id < 1) throw std::invalid_argument("view: user ids must be positive");
    if (u.deadline < 1 || u.deadline > view.num_slots)
      throw std::invalid_argument("view: deadline out of range");
    if (static_cast<int>(u.nu.size()) != view.num_channels)
      throw std::invalid_argument("view: nu arity mismatch");
    for (int n : u.nu)
      if (n < 1) throw std::invalid_argument("view: requirement below 1");
  }
}

}  // namespace

ScheduleOutcome schedule_scsb1(const BsView& view, TiePolicy tie, const SchedulerProbe* probe) {
  if (view.num_channels != 1)
    throw std::invalid_argument("schedule_scsb1: single-channel views only");
  validate_view(view);
  const int T = view.num_slots;

  std::vector<UserRef> order;
  order.reserve(view.users.size());
  std::map<int, int> nu_of;
  for (const BsUser& u : view.users) {
    if (nu_of.count(u.id)) throw std::invalid_argument("view: duplicate user id");
    nu_of[u.id] = u.nu[0];
    if (!servable(u.nu[0]) || u.nu[0] > T) continue;  // can never complete
    order.push_back({u.id, u.deadline, u.nu[0]});
  }
  std::sort(order.begin(), order.end(),
            [tie](const UserRef& a, const UserRef& b) { return edf_before(a, b, tie); });

  ScheduleOutcome out;
  Schedule& s = out.schedule;
  s.num_slots = T;
  s.num_channels = 1;
  s.grid.assign(T, 0);
  EnergyLedger& led = out.ledger;
  led.residual = view.energy;
  led.provenance.assign(T, 0);

  auto evict_largest = [&](int current) {
    EvictEvent ev;
    ev.user = current;
    ev.candidates = s.served;
    int best = -1;
    for (int id : s.served) {
      const int n = nu_of[id];
      ev.candidate_nu.push_back(n);
      if (best == -1 || n > nu_of[best] ||
          (n == nu_of[best] && (tie == TiePolicy::kDefault ? id < best : id > best)))
        best = id;
    }
    ev.evicted = best;
    detail::evict_and_compact(s, led, best);
    if (probe && probe->on_evict) probe->on_evict(ev);
    return best;
  };

  for (const UserRef& u : order) {
    s.served.insert(std::lower_bound(s.served.begin(), s.served.end(), u.id), u.id);
    int x = 0, t = 1, r = 1;
    while (t <= T) {
      r = std::max(r, t);
      if (led.residual[t - 1] > 0) {
        const int delta =
            std::min({led.residual[t - 1], u.nu - x, T - r + 1});
        const int end = r + delta - 1;
        for (int slot = r; slot <= end; ++slot) {
          if (s.grid[slot - 1] == 0) {
            s.grid[slot - 1] = u.id;
            led.provenance[slot - 1] = t;
            --led.residual[t - 1];
            ++x;
          }
          r = slot + 1;
          if (x == u.nu) break;
        }
      } else {
        ++t;
      }
      if (x == u.nu && u.deadline >= r - 1) break;
      if (x == u.nu && u.deadline < r - 1) {
        // Finished too late: drop the largest user; compaction pulls the
        // remaining allocation (this user included, if it survived) ahead
        // of every earlier completion, which lands it within its deadline.
        const int gone = evict_largest(u.id);
        if (gone != u.id) {
          const auto [first, last] = starting_completion(s, u.id);
          (void)first;
          if (last > u.deadline)
            throw std::logic_error("schedule_scsb1: deadline still violated after eviction");
        }
        break;
      }
      if (x < u.nu && std::max(r, t) > T) {
        const int gone = evict_largest(u.id);
        if (gone == u.id) break;
        x = 0;
        for (int slot = 0; slot < T; ++slot)
          if (s.grid[slot] == u.id) ++x;
        t = 1;
        r = 1;
      }
    }
    if (probe && probe->on_user_done) probe->on_user_done(s, led);
  }

  out.served_count = static_cast<int>(s.served.size());
  return out;
}

UpdateResult update_reschedule(const Schedule& s, const EnergyLedger& ledger, const BsView& view,
                               int evict_id) {
  Feasibility lf = check_ledger(s, ledger, view);
  if (!lf.ok) throw std::invalid_argument("update_reschedule: bad ledger: " + lf.detail);
  if (!std::binary_search(s.served.begin(), s.served.end(), evict_id))
    throw std::invalid_argument("update_reschedule: user not served");
  UpdateResult res;
  res.schedule = s;
  res.ledger = ledger;
  detail::evict_and_compact(res.schedule, res.ledger, evict_id);
  res.served = res.schedule.served;
  res.t = 1;
  res.r = 1;
  return res;
}

}  // namespace raed

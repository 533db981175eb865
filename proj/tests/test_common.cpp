#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "raed/common_deadline.hpp"
#include "raed/rng.hpp"
#include "raed/scsb.hpp"
#include "support/fixtures.hpp"

using namespace raed;
using testsupport::RandomSpec;
using testsupport::random_instance;

namespace {

// Independent check: longest feasible busy run starting at slot t (1-based),
// growing one slot at a time while cumulative arrivals keep up.
int brute_run_length(const std::vector<int>& arrivals, int t) {
  const int T = static_cast<int>(arrivals.size());
  std::vector<long long> prefix(T + 1, 0);
  for (int i = 0; i < T; ++i) prefix[i + 1] = prefix[i] + arrivals[i];
  int len = 0;
  while (true) {
    const int slot = t + len;
    if (slot > T) break;
    if (prefix[slot] < len + 1) break;
    ++len;
  }
  return len;
}

}  // namespace

TEST_SUITE("common") {

TEST_CASE("budget: everything up front allows a full-horizon run") {
  const CapacityProfile p = budget({5, 0, 0, 0, 0});
  CHECK(p.capacity == std::vector<int>{5, 4, 3, 2, 1});
  CHECK(p.best == 5);
  CHECK(p.best_start == 1);
}

TEST_CASE("budget: no arrivals means no capacity anywhere") {
  const CapacityProfile p = budget({0, 0, 0});
  CHECK(p.capacity == std::vector<int>{0, 0, 0});
  CHECK(p.best == 0);
  CHECK(p.best_start == 1);
}

TEST_CASE("budget: alternating arrivals, worked profile") {
  const CapacityProfile p = budget({1, 0, 1, 0});
  CHECK(p.capacity == std::vector<int>{1, 2, 2, 1});
  CHECK(p.best == 2);
  CHECK(p.best_start == 2);  // earliest slot attaining the max
}

TEST_CASE("budget: rejects bad profiles") {
  CHECK_THROWS_AS(budget({}), std::invalid_argument);
  CHECK_THROWS_AS(budget({1, -1}), std::invalid_argument);
}

TEST_CASE("budget: matches the slot-by-slot simulation") {
  Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const int T = rng.uniform_int(1, 12);
    std::vector<int> arrivals(T);
    for (int& a : arrivals) a = rng.uniform_int(0, 3);
    const CapacityProfile p = budget(arrivals);
    for (int t = 1; t <= T; ++t) {
      REQUIRE(p.capacity[t - 1] == brute_run_length(arrivals, t));
    }
    int best = 0, best_start = 1;
    for (int t = 1; t <= T; ++t)
      if (p.capacity[t - 1] > best) {
        best = p.capacity[t - 1];
        best_start = t;
      }
    CHECK(p.best == best);
    CHECK(p.best_start == best_start);
  }
}

TEST_CASE("budget: fixed point settles in at most T steps per slot") {
  Rng rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    const int T = rng.uniform_int(1, 50);
    std::vector<int> arrivals(T);
    for (int& a : arrivals) a = rng.uniform_int(0, 2);
    const CapacityProfile p = budget(arrivals);
    CHECK(p.iterations <= static_cast<long long>(T) * (T + 1));
  }
}

TEST_CASE("pack: zero capacity admits nobody") {
  const ScheduleOutcome out = pack({{1, 1}, {2, 2}}, 0, 1, {1, 1});
  CHECK(out.served_count == 0);
  CHECK(out.schedule.served.empty());
  CHECK(out.schedule.grid == std::vector<int>{0, 0});
  CHECK(out.ledger.residual == std::vector<int>{1, 1});
}

TEST_CASE("pack: smallest requirements first, skip what no longer fits") {
  // capacity 3 takes the 1-slot and 2-slot users, not the 3-slot one
  const ScheduleOutcome out =
      pack({{1, 3}, {2, 1}, {3, 2}}, 3, 1, {3, 0, 0, 0});
  CHECK(out.schedule.served == std::vector<int>{2, 3});
  CHECK(out.schedule.grid == std::vector<int>{2, 3, 3, 0});
  CHECK(out.ledger.residual == std::vector<int>{0, 0, 0, 0});
  CHECK(out.ledger.provenance == std::vector<int>{1, 1, 1, 0});
}

TEST_CASE("pack: placement is back-to-back from the start slot") {
  const ScheduleOutcome out =
      pack({{1, 1}, {2, 1}, {3, 1}}, 5, 2, {0, 3, 0, 0, 0});
  CHECK(out.schedule.served == std::vector<int>{1, 2, 3});
  CHECK(out.schedule.grid == std::vector<int>{0, 1, 2, 3, 0});
  CHECK(out.ledger.provenance == std::vector<int>{0, 2, 2, 2, 0});
}

TEST_CASE("pack: tie on equal requirements follows the policy") {
  const ScheduleOutcome def =
      pack({{1, 1}, {2, 1}, {3, 1}}, 2, 1, {2, 0, 0});
  CHECK(def.schedule.served == std::vector<int>{1, 2});
  const ScheduleOutcome adv =
      pack({{1, 1}, {2, 1}, {3, 1}}, 2, 1, {2, 0, 0}, TiePolicy::kAdversarial);
  CHECK(adv.schedule.served == std::vector<int>{2, 3});
}

TEST_CASE("pack: unservable entries are ignored") {
  const ScheduleOutcome out =
      pack({{1, kUnservable}, {2, 1}}, 3, 1, {3, 0, 0});
  CHECK(out.schedule.served == std::vector<int>{2});
}

TEST_CASE("pack: guards fire on inconsistent inputs") {
  CHECK_THROWS_AS(pack({{1, 1}}, 1, 0, {1}), std::invalid_argument);
  CHECK_THROWS_AS(pack({{1, 1}}, 1, 3, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(pack({{1, 1}}, -1, 1, {1}), std::invalid_argument);
  CHECK_THROWS_AS(pack({}, 1, 1, {}), std::invalid_argument);
  // block runs off the horizon
  CHECK_THROWS_AS(pack({{1, 3}}, 3, 3, {3, 0, 0, 0}), std::logic_error);
  // arrivals cannot pay for the packed slot
  CHECK_THROWS_AS(pack({{1, 1}}, 1, 1, {0, 1}), std::logic_error);
}

TEST_CASE("scsb2: single user on a single slot") {
  BsView v;
  v.num_slots = 1;
  v.num_channels = 1;
  v.energy = {1};
  v.users = {{1, 1, {1}}};
  const ScheduleOutcome out = schedule_scsb2(v);
  CHECK(out.served_count == 1);
  CHECK(out.schedule.grid == std::vector<int>{1});
}

TEST_CASE("scsb2: alternating arrivals serve two of three unit users") {
  BsView v;
  v.num_slots = 4;
  v.num_channels = 1;
  v.energy = {1, 0, 1, 0};
  v.users = {{1, 4, {1}}, {2, 4, {1}}, {3, 4, {1}}};
  const ScheduleOutcome out = schedule_scsb2(v);
  CHECK(out.served_count == 2);
  CHECK(out.schedule.served == std::vector<int>{1, 2});
  CHECK(out.schedule.grid == std::vector<int>{0, 1, 2, 0});
  CHECK(check_schedule(out.schedule, v).ok);
  CHECK(check_ledger(out.schedule, out.ledger, v).ok);
}

TEST_CASE("scsb2: requirements beyond the horizon are filtered") {
  BsView v;
  v.num_slots = 2;
  v.num_channels = 1;
  v.energy = {2, 0};
  v.users = {{1, 2, {3}}, {2, 2, {kUnservable}}, {3, 2, {2}}};
  const ScheduleOutcome out = schedule_scsb2(v);
  CHECK(out.schedule.served == std::vector<int>{3});
}

TEST_CASE("scsb2: rejects mixed deadlines and multi-channel views") {
  BsView v;
  v.num_slots = 2;
  v.num_channels = 1;
  v.energy = {1, 1};
  v.users = {{1, 1, {1}}};
  CHECK_THROWS_AS(schedule_scsb2(v), std::invalid_argument);

  BsView w;
  w.num_slots = 1;
  w.num_channels = 2;
  w.energy = {1};
  w.users = {{1, 1, {1, 1}}};
  CHECK_THROWS_AS(schedule_scsb2(w), std::invalid_argument);
}

TEST_CASE("scsb2: serves as many users as the general scheduler") {
  RandomSpec spec;
  spec.max_users = 8;
  spec.max_slots = 8;
  spec.common_deadline = true;
  Rng rng(9001);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(rng, spec);
    const BsView v = inst.bs_view(0);
    const ScheduleOutcome fast = schedule_scsb2(v);
    const ScheduleOutcome slow = schedule_scsb1(v);
    REQUIRE(fast.served_count == slow.served_count);
    REQUIRE(check_schedule(fast.schedule, v).ok);
    REQUIRE(check_ledger(fast.schedule, fast.ledger, v).ok);
  }
}

TEST_CASE("scsb2: adversarial ties keep the served count") {
  RandomSpec spec;
  spec.max_users = 7;
  spec.max_slots = 7;
  spec.common_deadline = true;
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng, spec);
    const BsView v = inst.bs_view(0);
    const ScheduleOutcome a = schedule_scsb2(v, TiePolicy::kDefault);
    const ScheduleOutcome b = schedule_scsb2(v, TiePolicy::kAdversarial);
    REQUIRE(a.served_count == b.served_count);
    REQUIRE(check_schedule(b.schedule, v).ok);
  }
}

}  // TEST_SUITE

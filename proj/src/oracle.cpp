#include "raed/oracle.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "raed/schedule.hpp"
#include "raed/types.hpp"

namespace raed {

namespace {

struct ChanJob {
  int deadline;
  int nu;
  int id;
};

bool edf_before(const ChanJob& a, const ChanJob& b) {
  if (a.deadline != b.deadline) return a.deadline < b.deadline;
  if (a.nu != b.nu) return a.nu < b.nu;
  return a.id < b.id;
}

// Greedy energy allotment: preemptive earliest-deadline service per
// channel; when energy is short, the channels whose pending deadline is
// soonest win. Sound when it succeeds (it builds a real schedule) but not
// complete: under deadline ties it can starve the channel whose later
// jobs are tighter. A false verdict must be rechecked by the caller.
bool edf_greedy(const std::vector<std::vector<ChanJob>>& per_chan, const std::vector<int>& arrivals,
                int T, Schedule* out) {
  const int C = static_cast<int>(per_chan.size());
  std::vector<size_t> head(C, 0);
  std::vector<int> left(C, 0);
  for (int c = 0; c < C; ++c)
    if (!per_chan[c].empty()) left[c] = per_chan[c][0].nu;

  if (out) {
    out->num_slots = T;
    out->num_channels = C;
    out->grid.assign(static_cast<size_t>(T) * C, 0);
    out->served.clear();
  }

  long long balance = 0;
  std::vector<int> want;
  for (int t = 1; t <= T; ++t) {
    balance += arrivals[t - 1];
    want.clear();
    for (int c = 0; c < C; ++c) {
      if (head[c] >= per_chan[c].size()) continue;
      const ChanJob& j = per_chan[c][head[c]];
      if (j.deadline < t) return false;                    // already missed
      if (left[c] > j.deadline - t + 1) return false;      // cannot make it
      want.push_back(c);
    }
    std::sort(want.begin(), want.end(), [&](int a, int b) {
      const ChanJob& ja = per_chan[a][head[a]];
      const ChanJob& jb = per_chan[b][head[b]];
      if (ja.deadline != jb.deadline) return ja.deadline < jb.deadline;
      return a < b;
    });
    const int serve = static_cast<int>(std::min<long long>(balance, want.size()));
    for (int k = 0; k < serve; ++k) {
      const int c = want[k];
      if (out) out->at(t - 1, c) = per_chan[c][head[c]].id;
      if (--left[c] == 0) {
        if (out) out->served.push_back(per_chan[c][head[c]].id);
        ++head[c];
        if (head[c] < per_chan[c].size()) left[c] = per_chan[c][head[c]].nu;
      }
    }
    balance -= serve;
  }
  for (int c = 0; c < C; ++c)
    if (head[c] < per_chan[c].size()) return false;
  if (out) std::sort(out->served.begin(), out->served.end());
  return true;
}

// Can every listed job finish by its deadline, with at most one
// transmission per (slot, channel) and one energy unit per transmission
// drawn from the station's arrival stream? Exact: the greedy allotment
// answers the common cases, and an exhaustive sweep over per-channel
// progress vectors settles the rest. Fills *out when feasible.
bool edf_multi_feasible(std::vector<std::vector<ChanJob>> per_chan, const std::vector<int>& arrivals,
                        int T, Schedule* out) {
  const int C = static_cast<int>(per_chan.size());
  for (auto& jobs : per_chan) std::sort(jobs.begin(), jobs.end(), edf_before);

  // Necessary conditions by deadline checkpoint: within each channel the
  // jobs due by slot t need at most t cells, and across channels they need
  // at most the units arrived by t.
  std::vector<int> work(C, 0);
  std::vector<std::vector<int>> quota(C, std::vector<int>(T + 1, 0));
  std::vector<long long> supply(T + 1, 0);
  for (int t = 1; t <= T; ++t) supply[t] = supply[t - 1] + arrivals[t - 1];
  for (int c = 0; c < C; ++c) {
    for (const ChanJob& j : per_chan[c]) {
      if (j.nu > j.deadline) return false;
      work[c] += j.nu;
      quota[c][j.deadline] += j.nu;
    }
    if (work[c] > T) return false;
    for (int t = 1; t <= T; ++t) {
      quota[c][t] += quota[c][t - 1];
      if (quota[c][t] > t) return false;
    }
  }
  for (int t = 1; t <= T; ++t) {
    long long need = 0;
    for (int c = 0; c < C; ++c) need += quota[c][t];
    if (need > supply[t]) return false;
  }

  if (edf_greedy(per_chan, arrivals, T, out)) return true;

  // Gray zone. State = slots of progress per channel; a slot may advance
  // any pending subset of channels the energy balance covers.
  std::vector<long long> stride(C + 1, 1);
  for (int c = 0; c < C; ++c) stride[c + 1] = stride[c] * (work[c] + 1);
  const long long target = stride[C] - 1;
  std::vector<std::map<long long, std::pair<long long, unsigned>>> parent(T + 1);
  std::set<long long> frontier{0};
  parent[0][0] = {-1, 0};
  std::vector<int> done(C);
  for (int t = 1; t <= T; ++t) {
    std::set<long long> next;
    for (const long long st : frontier) {
      for (int c = 0; c < C; ++c)
        done[c] = static_cast<int>(st / stride[c] % (work[c] + 1));
      for (unsigned mask = 0; mask < (1u << C); ++mask) {
        long long ns = st;
        long long total = 0;
        bool ok = true;
        for (int c = 0; c < C && ok; ++c) {
          int d = done[c];
          if (mask >> c & 1) {
            if (d >= work[c]) {
              ok = false;
              break;
            }
            ++d;
            ns += stride[c];
          }
          if (d < quota[c][t]) ok = false;
          total += d;
        }
        if (!ok || total > supply[t]) continue;
        if (next.insert(ns).second) parent[t].emplace(ns, std::make_pair(st, mask));
      }
    }
    if (next.empty()) return false;
    frontier = std::move(next);
  }
  if (!frontier.count(target)) return false;

  if (out) {
    std::vector<unsigned> masks(T + 1, 0);
    long long st = target;
    for (int t = T; t >= 1; --t) {
      const auto [prev, mask] = parent[t].at(st);
      masks[t] = mask;
      st = prev;
    }
    out->num_slots = T;
    out->num_channels = C;
    out->grid.assign(static_cast<size_t>(T) * C, 0);
    out->served.clear();
    std::vector<size_t> head(C, 0);
    std::vector<int> left(C, 0);
    for (int c = 0; c < C; ++c)
      if (!per_chan[c].empty()) left[c] = per_chan[c][0].nu;
    for (int t = 1; t <= T; ++t)
      for (int c = 0; c < C; ++c) {
        if (!(masks[t] >> c & 1)) continue;
        out->at(t - 1, c) = per_chan[c][head[c]].id;
        if (--left[c] == 0) {
          out->served.push_back(per_chan[c][head[c]].id);
          if (++head[c] < per_chan[c].size()) left[c] = per_chan[c][head[c]].nu;
        }
      }
    std::sort(out->served.begin(), out->served.end());
  }
  return true;
}

struct Cand {
  int b;
  int c;
  int nu;
};

}  // namespace

int moore_hodgson(const std::vector<int>& nu, const std::vector<int>& deadline, int T) {
  if (nu.size() != deadline.size()) throw std::invalid_argument("moore_hodgson: size mismatch");
  if (T < 1) throw std::invalid_argument("moore_hodgson: bad horizon");
  struct Job {
    int d, nu, id;
  };
  std::vector<Job> jobs;
  for (size_t i = 0; i < nu.size(); ++i) {
    if (deadline[i] < 1 || deadline[i] > T)
      throw std::invalid_argument("moore_hodgson: deadline out of range");
    if (!servable(nu[i]) || nu[i] > T) continue;
    if (nu[i] < 1) throw std::invalid_argument("moore_hodgson: requirement below 1");
    jobs.push_back({deadline[i], nu[i], static_cast<int>(i) + 1});
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.nu != b.nu) return a.nu < b.nu;
    return a.id < b.id;
  });
  auto lighter = [](const Job& a, const Job& b) {  // heap top = largest, smallest id on tie
    if (a.nu != b.nu) return a.nu < b.nu;
    return a.id > b.id;
  };
  std::priority_queue<Job, std::vector<Job>, decltype(lighter)> taken(lighter);
  long long work = 0;
  for (const Job& j : jobs) {
    taken.push(j);
    work += j.nu;
    if (work > j.d) {
      work -= taken.top().nu;
      taken.pop();
    }
  }
  return static_cast<int>(taken.size());
}

std::string validate_association(const Instance& inst, const AssociationOutcome& out) {
  std::set<int> seen_bs;
  std::set<int> seen_users;
  long long total = 0;
  for (const auto& [bs_id, oc] : out.per_bs) {
    if (bs_id < 1 || bs_id > inst.num_bs) return "station id out of range";
    if (!seen_bs.insert(bs_id).second) return "station committed twice";
    const BsView view = inst.bs_view(bs_id - 1);
    const Feasibility f = check_schedule(oc.schedule, view);
    if (!f.ok) return "station " + std::to_string(bs_id) + ": " + f.detail;
    const Feasibility lf = check_ledger(oc.schedule, oc.ledger, view);
    if (!lf.ok) return "station " + std::to_string(bs_id) + " ledger: " + lf.detail;
    if (oc.served_count != static_cast<int>(oc.schedule.served.size()))
      return "station " + std::to_string(bs_id) + ": served_count mismatch";
    for (int id : oc.schedule.served)
      if (!seen_users.insert(id).second)
        return "user " + std::to_string(id) + " served by more than one station";
    total += oc.served_count;
  }
  if (total != out.served_total) return "served_total mismatch";
  if (out.used_bs.size() != out.per_bs.size()) return "used_bs inconsistent with per_bs";
  if (out.committed_counts.size() != out.used_bs.size()) return "committed_counts size mismatch";
  for (size_t i = 0; i < out.used_bs.size(); ++i) {
    auto it = out.per_bs.find(out.used_bs[i]);
    if (it == out.per_bs.end()) return "used_bs entry missing from per_bs";
    if (it->second.served_count != out.committed_counts[i]) return "committed count mismatch";
  }
  return "";
}

OracleResult solve_exact(const Instance& inst, const OracleLimits& limits) {
  inst.validate();
  const int U = inst.num_users();
  const int B = inst.num_bs;
  const int C = inst.num_channels;
  const int T = inst.num_slots;
  if (U > limits.max_users || B > limits.max_bs || C > limits.max_channels ||
      T > limits.max_slots)
    throw std::invalid_argument("solve_exact: instance exceeds the supported exact-solve size");

  std::vector<std::vector<Cand>> cands(U);
  for (int u = 0; u < U; ++u) {
    const int d = inst.users[u].deadline;
    for (int b = 0; b < B; ++b)
      for (int c = 0; c < C; ++c) {
        const int n = inst.nu(u, b, c);
        if (!servable(n) || n > T || n > d) continue;
        cands[u].push_back({b, c, n});
      }
    std::sort(cands[u].begin(), cands[u].end(), [](const Cand& a, const Cand& b) {
      if (a.nu != b.nu) return a.nu < b.nu;
      if (a.b != b.b) return a.b < b.b;
      return a.c < b.c;
    });
  }

  // Decision order: most constrained first.
  std::vector<int> order;
  for (int u = 0; u < U; ++u)
    if (!cands[u].empty()) order.push_back(u);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (cands[a].size() != cands[b].size()) return cands[a].size() < cands[b].size();
    if (cands[a][0].nu != cands[b][0].nu) return cands[a][0].nu > cands[b][0].nu;
    return a < b;
  });
  const int N = static_cast<int>(order.size());

  // For the pruning bound: cheapest-requirement prefix sums of the not yet
  // decided users whose deadline falls at or before each checkpoint, plus
  // the count of undecided users due after it.
  std::vector<std::vector<std::vector<long long>>> cheap_due(
      N + 1, std::vector<std::vector<long long>>(T + 1));
  std::vector<std::vector<int>> later_cnt(N + 1, std::vector<int>(T + 1, 0));
  for (int i = 0; i <= N; ++i) {
    for (int t = 1; t <= T; ++t) {
      std::vector<int> mins;
      int later = 0;
      for (int k = i; k < N; ++k) {
        if (inst.users[order[k]].deadline <= t)
          mins.push_back(cands[order[k]][0].nu);
        else
          ++later;
      }
      std::sort(mins.begin(), mins.end());
      auto& pre = cheap_due[i][t];
      pre.assign(mins.size() + 1, 0);
      for (size_t k = 0; k < mins.size(); ++k) pre[k + 1] = pre[k] + mins[k];
      later_cnt[i][t] = later;
    }
  }

  std::vector<std::vector<long long>> bs_supply(B, std::vector<long long>(T + 1, 0));
  for (int b = 0; b < B; ++b)
    for (int t = 1; t <= T; ++t) bs_supply[b][t] = bs_supply[b][t - 1] + inst.energy.at(b, t - 1);
  std::vector<long long> bs_energy(B, 0);
  for (int b = 0; b < B; ++b) bs_energy[b] = bs_supply[b][T];

  // Users indistinguishable to the objective (same deadline, same
  // requirement on every station and channel) are interchangeable, so the
  // served members of each class are forced to be a prefix of the class in
  // decision order: once one member is skipped, the rest are skipped too.
  std::vector<int> cls(U, -1);
  int num_classes = 0;
  {
    std::map<std::vector<int>, int> seen;
    for (int i = 0; i < N; ++i) {
      const int u = order[i];
      std::vector<int> key{inst.users[u].deadline};
      for (int b = 0; b < B; ++b)
        for (int c = 0; c < C; ++c) key.push_back(inst.nu(u, b, c));
      auto [it, fresh] = seen.emplace(std::move(key), num_classes);
      if (fresh) ++num_classes;
      cls[u] = it->second;
    }
  }
  std::vector<int> skipped_in_class(num_classes, 0);

  // Channels that look identical to every user (true for path-loss-only
  // gain models) are interchangeable; the search only tries the lowest
  // empty one among equals.
  std::vector<std::vector<std::vector<bool>>> chan_eq(
      B, std::vector<std::vector<bool>>(C, std::vector<bool>(C, false)));
  for (int b = 0; b < B; ++b)
    for (int c1 = 0; c1 < C; ++c1)
      for (int c2 = 0; c2 < C; ++c2) {
        bool eq = true;
        for (int u = 0; u < U && eq; ++u) eq = inst.nu(u, b, c1) == inst.nu(u, b, c2);
        chan_eq[b][c1][c2] = eq;
      }

  // Warm start from the greedy association so pruning bites immediately.
  std::vector<std::pair<int, int>> assignment(U, {-1, -1});  // (b, c) or (-1, -1)
  std::vector<std::pair<int, int>> best_assignment(U, {-1, -1});
  int best = 0;
  {
    const AssociationOutcome h =
        C == 1 ? schedule_scmb(inst) : schedule_mcmb(inst);
    for (const auto& [bs_id, oc] : h.per_bs)
      for (int id : oc.schedule.served) {
        const auto [first, last] = starting_completion(oc.schedule, id);
        (void)last;
        int chan = 0;
        for (int c = 0; c < C; ++c)
          if (oc.schedule.at(first - 1, c) == id) chan = c;
        best_assignment[id - 1] = {bs_id - 1, chan};
      }
    best = h.served_total;
  }

  std::vector<std::vector<std::vector<ChanJob>>> at(
      B, std::vector<std::vector<ChanJob>>(C));
  std::vector<long long> used_units(B, 0);
  std::vector<std::vector<int>> bs_arrivals(B);
  for (int b = 0; b < B; ++b) {
    bs_arrivals[b].resize(T);
    for (int t = 0; t < T; ++t) bs_arrivals[b][t] = inst.energy.at(b, t);
  }

  long long nodes = 0;
  int count = 0;

  auto capacity_left = [&] {
    long long cap = 0;
    for (int b = 0; b < B; ++b)
      cap += std::max<long long>(
          0, std::min<long long>(bs_energy[b], static_cast<long long>(C) * T) - used_units[b]);
    return cap;
  };

  auto feasible_with = [&](int b) {
    return edf_multi_feasible(at[b], bs_arrivals[b], T, nullptr);
  };

  auto rec = [&](auto&& self, int idx) -> void {
    if (++nodes > limits.max_nodes)
      throw LimitError("solve_exact: node budget exhausted");
    if (idx == N) {
      if (count > best) {
        best = count;
        best_assignment = assignment;
      }
      return;
    }
    const long long cap = capacity_left();
    const auto& pre = suffix_prefix[idx];
    int extra = static_cast<int>(
        std::upper_bound(pre.begin(), pre.end(), cap) - pre.begin() - 1);
    if (count + extra <= best) return;

    const int u = order[idx];
    for (size_t k = 0; k < cands[u].size(); ++k) {
      const Cand& cd = cands[u][k];
      if (used_units[cd.b] + cd.nu > std::min<long long>(bs_energy[cd.b],
                                                         static_cast<long long>(C) * T))
        continue;
      if (at[cd.b][cd.c].empty()) {
        bool covered = false;
        for (size_t k2 = 0; k2 < k && !covered; ++k2) {
          const Cand& prev = cands[u][k2];
          covered = prev.b == cd.b && prev.nu == cd.nu && at[prev.b][prev.c].empty() &&
                    chan_eq[cd.b][prev.c][cd.c];
        }
        if (covered) continue;
      }
      at[cd.b][cd.c].push_back({inst.users[u].deadline, cd.nu, u + 1});
      if (feasible_with(cd.b)) {
        used_units[cd.b] += cd.nu;
        assignment[u] = {cd.b, cd.c};
        ++count;
        self(self, idx + 1);
        --count;
        assignment[u] = {-1, -1};
        used_units[cd.b] -= cd.nu;
      }
      at[cd.b][cd.c].pop_back();
    }
    self(self, idx + 1);  // leave u unserved
  };
  rec(rec, 0);

  OracleResult res;
  res.optimal = best;
  res.nodes = nodes;

  // Rebuild the winning schedule per station and revalidate it end to end.
  std::map<int, std::vector<std::vector<ChanJob>>> winners;
  for (int u = 0; u < U; ++u) {
    const auto [b, c] = best_assignment[u];
    if (b < 0) continue;
    auto it = winners.find(b);
    if (it == winners.end())
      it = winners.emplace(b, std::vector<std::vector<ChanJob>>(C)).first;
    it->second[c].push_back({inst.users[u].deadline, inst.nu(u, b, c), u + 1});
  }
  for (auto& [b, per_chan] : winners) {
    ScheduleOutcome oc;
    if (!edf_multi_feasible(per_chan, bs_arrivals[b], T, &oc.schedule))
      throw std::logic_error("solve_exact: winning assignment failed rescheduling");
    oc.ledger = make_ledger(oc.schedule, inst.bs_view(b));
    oc.served_count = static_cast<int>(oc.schedule.served.size());
    res.witness.served_total += oc.served_count;
    res.witness.used_bs.push_back(b + 1);
    res.witness.committed_counts.push_back(oc.served_count);
    res.witness.per_bs.emplace(b + 1, std::move(oc));
  }
  if (res.witness.served_total != best)
    throw std::logic_error("solve_exact: witness does not attain the reported optimum");
  const std::string err = validate_association(inst, res.witness);
  if (!err.empty()) throw std::logic_error("solve_exact: invalid witness: " + err);
  return res;
}

}  // namespace raed

#include "raed/schedule.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "raed/types.hpp"

namespace raed {

namespace {

void require_dims(const Schedule& s, const BsView& view) {
  if (s.num_slots != view.num_slots || s.num_channels != view.num_channels)
    throw std::invalid_argument("schedule/view dimension mismatch");
  if (s.grid.size() != static_cast<size_t>(s.num_slots) * s.num_channels)
    throw std::invalid_argument("schedule grid size mismatch");
}

// Per-slot energy demand under the charge mode.
int slot_demand(const Schedule& s, int t, EnergyChargeMode mode) {
  int active = 0;
  for (int c = 0; c < s.num_channels; ++c)
    if (s.at(t, c) != 0) ++active;
  if (mode == EnergyChargeMode::kPerSlot) return active > 0 ? 1 : 0;
  return active;
}

}  // namespace

Feasibility check_schedule(const Schedule& s, const BsView& view, EnergyChargeMode mode) {
  require_dims(s, view);
  Feasibility bad;
  bad.ok = false;

  for (size_t i = 1; i < s.served.size(); ++i)
    if (s.served[i - 1] >= s.served[i]) {
      bad.detail = "served list not strictly ascending";
      return bad;
    }

  std::map<int, const BsUser*> by_id;
  for (const BsUser& u : view.users) by_id[u.id] = &u;

  std::map<int, std::vector<std::pair<int, int>>> cells;  // id -> (t, c), scan order
  for (int t = 0; t < s.num_slots; ++t)
    for (int c = 0; c < s.num_channels; ++c) {
      const int id = s.at(t, c);
      if (id == 0) continue;
      if (!std::binary_search(s.served.begin(), s.served.end(), id)) {
        bad.detail = "grid holds user " + std::to_string(id) + " not in served list";
        return bad;
      }
      cells[id].push_back({t, c});
    }

  for (int id : s.served) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      bad.detail = "served user " + std::to_string(id) + " not present in view";
      return bad;
    }
    const BsUser& u = *it->second;
    auto cit = cells.find(id);
    if (cit == cells.end()) {
      bad.detail = "served user " + std::to_string(id) + " occupies no cell";
      return bad;
    }
    const auto& own = cit->second;
    const int chan = own.front().second;
    for (const auto& [t, c] : own)
      if (c != chan) {
        bad.detail = "user " + std::to_string(id) + " spans more than one channel";
        return bad;
      }
    const int need = u.nu[chan];
    if (!servable(need)) {
      bad.detail = "user " + std::to_string(id) + " scheduled on an unservable channel";
      return bad;
    }
    if (static_cast<int>(own.size()) != need) {
      bad.detail = "user " + std::to_string(id) + " holds " + std::to_string(own.size()) +
                   " cells, requires " + std::to_string(need);
      return bad;
    }
    const int last = own.back().first + 1;  // cells are in slot order
    if (last > u.deadline) {
      bad.detail = "user " + std::to_string(id) + " finishes at slot " + std::to_string(last) +
                   " past deadline " + std::to_string(u.deadline);
      return bad;
    }
  }

  long long balance = 0;
  for (int t = 0; t < s.num_slots; ++t) {
    balance += view.energy[t];
    balance -= slot_demand(s, t, mode);
    if (balance < 0) {
      bad.detail = "energy balance negative after slot " + std::to_string(t + 1);
      return bad;
    }
  }

  return Feasibility{};
}

EnergyLedger make_ledger(const Schedule& s, const BsView& view, EnergyChargeMode mode) {
  Feasibility f = check_schedule(s, view, mode);
  if (!f.ok) throw std::invalid_argument("make_ledger: infeasible schedule: " + f.detail);

  EnergyLedger ledger;
  ledger.residual = view.energy;
  ledger.provenance.assign(s.grid.size(), 0);
  int cursor = 0;  // earliest arrival slot that may still hold units
  for (int t = 0; t < s.num_slots; ++t) {
    for (int c = 0; c < s.num_channels; ++c) {
      if (s.at(t, c) == 0) continue;
      if (mode == EnergyChargeMode::kPerSlot && [&] {
            for (int cc = 0; cc < c; ++cc)
              if (s.at(t, cc) != 0) return true;
            return false;
          }())
        continue;  // slot already paid by a lower channel
      while (cursor <= t && ledger.residual[cursor] == 0) ++cursor;
      // check_schedule guarantees a unit exists at or before t
      int a = cursor;
      while (ledger.residual[a] == 0) ++a;
      --ledger.residual[a];
      ledger.provenance[static_cast<size_t>(t) * s.num_channels + c] = a + 1;
    }
  }
  return ledger;
}

Feasibility check_ledger(const Schedule& s, const EnergyLedger& ledger, const BsView& view,
                         EnergyChargeMode mode) {
  require_dims(s, view);
  Feasibility bad;
  bad.ok = false;
  if (ledger.residual.size() != static_cast<size_t>(s.num_slots) ||
      ledger.provenance.size() != s.grid.size()) {
    bad.detail = "ledger size mismatch";
    return bad;
  }
  std::vector<long long> consumed(s.num_slots, 0);
  for (int t = 0; t < s.num_slots; ++t)
    for (int c = 0; c < s.num_channels; ++c) {
      const int prov = ledger.provenance[static_cast<size_t>(t) * s.num_channels + c];
      bool needs_unit = s.at(t, c) != 0;
      if (mode == EnergyChargeMode::kPerSlot && needs_unit)
        for (int cc = 0; cc < c; ++cc)
          if (s.at(t, cc) != 0) needs_unit = false;  // paid by lowest active channel
      if (!needs_unit) {
        if (prov != 0) {
          bad.detail = "provenance on an unpaid cell at slot " + std::to_string(t + 1);
          return bad;
        }
        continue;
      }
      if (prov < 1 || prov > t + 1) {
        bad.detail = "cell at slot " + std::to_string(t + 1) + " paid by invalid arrival " +
                     std::to_string(prov);
        return bad;
      }
      ++consumed[prov - 1];
    }
  for (int t = 0; t < s.num_slots; ++t) {
    if (ledger.residual[t] < 0) {
      bad.detail = "negative residual at slot " + std::to_string(t + 1);
      return bad;
    }
    if (ledger.residual[t] + consumed[t] != view.energy[t]) {
      bad.detail = "unit count mismatch for arrivals of slot " + std::to_string(t + 1);
      return bad;
    }
  }
  return Feasibility{};
}

std::pair<int, int> starting_completion(const Schedule& s, int user_id) {
  int first = 0, last = 0;
  for (int t = 0; t < s.num_slots; ++t)
    for (int c = 0; c < s.num_channels; ++c)
      if (s.at(t, c) == user_id) {
        if (first == 0) first = t + 1;
        last = t + 1;
      }
  if (first == 0)
    throw std::invalid_argument("starting_completion: user " + std::to_string(user_id) +
                                " occupies no cell");
  return {first, last};
}

Schedule to_nonpreemptive(const Schedule& s, const BsView& view) {
  Feasibility f = check_schedule(s, view);
  if (!f.ok) throw std::invalid_argument("to_nonpreemptive: infeasible input: " + f.detail);

  Schedule out = s;
  for (int c = 0; c < s.num_channels; ++c) {
    // Gather spans per user on this channel.
    std::map<int, std::pair<int, int>> span;  // id -> (first, last), 0-based
    std::map<int, int> count;
    for (int t = 0; t < s.num_slots; ++t) {
      const int id = s.at(t, c);
      if (id == 0) continue;
      auto it = span.find(id);
      if (it == span.end())
        span[id] = {t, t};
      else
        it->second.second = t;
      ++count[id];
    }
    for (const auto& [id, se] : span) {
      for (int t = se.first; t <= se.second; ++t)
        if (s.at(t, c) != 0 && s.at(t, c) != id)
          throw std::invalid_argument(
              "to_nonpreemptive: slot " + std::to_string(t + 1) + " interleaves user " +
              std::to_string(s.at(t, c)) + " inside the span of user " + std::to_string(id));
      for (int t = se.first; t <= se.second; ++t)
        if (out.at(t, c) == id) out.at(t, c) = 0;
      for (int t = se.second - count[id] + 1; t <= se.second; ++t) out.at(t, c) = id;
    }
  }
  return out;
}

std::string render_schedule(const Schedule& s, const std::vector<int>& energy) {
  if (energy.size() != static_cast<size_t>(s.num_slots))
    throw std::invalid_argument("render_schedule: energy size mismatch");
  std::ostringstream os;
  auto cell = [&os](const std::string& v) { os << ' ' << v; };
  os << "slot";
  for (int t = 1; t <= s.num_slots; ++t) cell(std::to_string(t).insert(0, t < 10 ? 2 : 1, ' '));
  os << '\n';
  for (int c = 0; c < s.num_channels; ++c) {
    os << "ch" << c + 1 << ' ';
    for (int t = 0; t < s.num_slots; ++t) {
      const int id = s.at(t, c);
      std::string v = id == 0 ? "." : std::to_string(id);
      v.insert(0, v.size() < 3 ? 3 - v.size() : 0, ' ');
      cell(v);
    }
    os << '\n';
  }
  os << "arr ";
  for (int t = 0; t < s.num_slots; ++t) {
    std::string v = std::to_string(energy[t]);
    v.insert(0, v.size() < 3 ? 3 - v.size() : 0, ' ');
    cell(v);
  }
  os << '\n';
  return os.str();
}

}  // namespace raed

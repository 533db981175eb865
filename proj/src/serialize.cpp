#include "raed/serialize.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

#include "raed/types.hpp"

namespace raed {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
  return j;
}

json schedule_to_j(const Schedule& s) {
  json grid = json::array();
  for (int t = 0; t < s.num_slots; ++t) {
    json row = json::array();
    for (int c = 0; c < s.num_channels; ++c) row.push_back(s.at(t, c));
    grid.push_back(std::move(row));
  }
  return json{{"num_slots", s.num_slots},
              {"num_channels", s.num_channels},
              {"grid", std::move(grid)},
              {"served", s.served}};
}

Schedule schedule_from_j(const json& j) {
  Schedule s;
  s.num_slots = j.at("num_slots").get<int>();
  s.num_channels = j.at("num_channels").get<int>();
  if (s.num_slots < 1 || s.num_channels < 1)
    throw std::invalid_argument("schedule: bad dimensions");
  const json& grid = j.at("grid");
  if (static_cast<int>(grid.size()) != s.num_slots)
    throw std::invalid_argument("schedule: grid row count mismatch");
  s.grid.reserve(static_cast<size_t>(s.num_slots) * s.num_channels);
  for (const json& row : grid) {
    if (static_cast<int>(row.size()) != s.num_channels)
      throw std::invalid_argument("schedule: grid column count mismatch");
    for (const json& v : row) s.grid.push_back(v.get<int>());
  }
  s.served = j.at("served").get<std::vector<int>>();
  return s;
}

json ledger_to_j(const EnergyLedger& l, int num_channels) {
  json prov = json::array();
  for (size_t i = 0; i < l.provenance.size(); i += num_channels) {
    json row = json::array();
    for (int c = 0; c < num_channels; ++c) row.push_back(l.provenance[i + c]);
    prov.push_back(std::move(row));
  }
  return json{{"residual", l.residual}, {"provenance", std::move(prov)}};
}

EnergyLedger ledger_from_j(const json& j, int num_channels) {
  EnergyLedger l;
  l.residual = j.at("residual").get<std::vector<int>>();
  for (const json& row : j.at("provenance")) {
    if (static_cast<int>(row.size()) != num_channels)
      throw std::invalid_argument("ledger: provenance arity mismatch");
    for (const json& v : row) l.provenance.push_back(v.get<int>());
  }
  return l;
}

}  // namespace

std::string instance_to_json(const Instance& inst, int indent) {
  inst.validate();
  json users = json::array();
  for (const UserRequest& u : inst.users)
    users.push_back(json{{"size_bits", u.size_bits}, {"deadline", u.deadline}});
  json required = json::array();
  for (int u = 0; u < inst.num_users(); ++u) {
    json per_bs = json::array();
    for (int b = 0; b < inst.num_bs; ++b) {
      json per_c = json::array();
      for (int c = 0; c < inst.num_channels; ++c) {
        const int nu = inst.nu(u, b, c);
        per_c.push_back(servable(nu) ? nu : 0);
      }
      per_bs.push_back(std::move(per_c));
    }
    required.push_back(std::move(per_bs));
  }
  json energy = json::array();
  for (int b = 0; b < inst.num_bs; ++b) {
    json row = json::array();
    for (int t = 0; t < inst.num_slots; ++t) row.push_back(inst.energy.at(b, t));
    energy.push_back(std::move(row));
  }
  json j{{"num_slots", inst.num_slots}, {"num_bs", inst.num_bs},
         {"num_channels", inst.num_channels}, {"users", std::move(users)},
         {"required", std::move(required)}, {"energy", std::move(energy)}};
  return j.dump(indent) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const json j = parse(text);
  Instance inst;
  try {
    inst.num_slots = j.at("num_slots").get<int>();
    inst.num_bs = j.at("num_bs").get<int>();
    inst.num_channels = j.at("num_channels").get<int>();
    for (const json& u : j.at("users"))
      inst.users.push_back({u.at("size_bits").get<long long>(), u.at("deadline").get<int>()});
    const json& required = j.at("required");
    if (static_cast<int>(required.size()) != inst.num_users())
      throw std::invalid_argument("instance: requirement tensor user count mismatch");
    for (const json& per_bs : required) {
      if (static_cast<int>(per_bs.size()) != inst.num_bs)
        throw std::invalid_argument("instance: requirement tensor station count mismatch");
      for (const json& per_c : per_bs) {
        if (static_cast<int>(per_c.size()) != inst.num_channels)
          throw std::invalid_argument("instance: requirement tensor channel count mismatch");
        for (const json& v : per_c) {
          const int nu = v.get<int>();
          if (nu < 0) throw std::invalid_argument("instance: negative requirement");
          inst.required.push_back(nu == 0 ? kUnservable : nu);
        }
      }
    }
    const json& energy = j.at("energy");
    if (static_cast<int>(energy.size()) != inst.num_bs)
      throw std::invalid_argument("instance: energy station count mismatch");
    inst.energy.num_bs = inst.num_bs;
    inst.energy.num_slots = inst.num_slots;
    for (const json& row : energy) {
      if (static_cast<int>(row.size()) != inst.num_slots)
        throw std::invalid_argument("instance: energy slot count mismatch");
      for (const json& v : row) inst.energy.arrivals.push_back(v.get<int>());
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance: ") + e.what());
  }
  inst.validate();
  return inst;
}

std::string outcome_to_json(const ScheduleOutcome& oc, int indent) {
  json j{{"schedule", schedule_to_j(oc.schedule)},
         {"ledger", ledger_to_j(oc.ledger, oc.schedule.num_channels)},
         {"served_count", oc.served_count}};
  return j.dump(indent) + "\n";
}

ScheduleOutcome outcome_from_json(const std::string& text) {
  const json j = parse(text);
  ScheduleOutcome oc;
  try {
    oc.schedule = schedule_from_j(j.at("schedule"));
    oc.ledger = ledger_from_j(j.at("ledger"), oc.schedule.num_channels);
    oc.served_count = j.at("served_count").get<int>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("outcome: ") + e.what());
  }
  return oc;
}

std::string association_to_json(const AssociationOutcome& out, int indent) {
  json per_bs = json::object();
  for (const auto& [bs_id, oc] : out.per_bs)
    per_bs[std::to_string(bs_id)] =
        json{{"schedule", schedule_to_j(oc.schedule)},
             {"ledger", ledger_to_j(oc.ledger, oc.schedule.num_channels)},
             {"served_count", oc.served_count}};
  json j{{"per_bs", std::move(per_bs)},
         {"used_bs", out.used_bs},
         {"committed_counts", out.committed_counts},
         {"served_total", out.served_total}};
  return j.dump(indent) + "\n";
}

GenerateSpec generate_spec_from_json(const std::string& text) {
  const json j = parse(text);
  GenerateSpec spec;
  const std::set<std::string> known{
      "area_side_m",     "pathloss_offset_db", "pathloss_slope_db", "min_distance_m",
      "tx_power_dbm",    "noise_dbm_per_hz",   "bandwidth_hz",      "slot_duration_s",
      "poisson_rate",    "size_min_bits",      "size_max_bits",     "deadline_mode",
      "seed",            "num_users",          "num_bs",            "num_channels",
      "num_slots"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key))
      throw std::invalid_argument("generate: unknown key '" + key + "'");
  }
  GenerationParams& p = spec.params;
  try {
    if (j.contains("area_side_m")) p.area_side_m = j["area_side_m"].get<double>();
    if (j.contains("pathloss_offset_db")) p.pathloss_offset_db = j["pathloss_offset_db"].get<double>();
    if (j.contains("pathloss_slope_db")) p.pathloss_slope_db = j["pathloss_slope_db"].get<double>();
    if (j.contains("min_distance_m")) p.min_distance_m = j["min_distance_m"].get<double>();
    if (j.contains("tx_power_dbm")) p.tx_power_dbm = j["tx_power_dbm"].get<double>();
    if (j.contains("noise_dbm_per_hz")) p.noise_dbm_per_hz = j["noise_dbm_per_hz"].get<double>();
    if (j.contains("bandwidth_hz")) p.bandwidth_hz = j["bandwidth_hz"].get<double>();
    if (j.contains("slot_duration_s")) p.slot_duration_s = j["slot_duration_s"].get<double>();
    if (j.contains("poisson_rate")) p.poisson_rate = j["poisson_rate"].get<double>();
    if (j.contains("size_min_bits")) p.size_min_bits = j["size_min_bits"].get<long long>();
    if (j.contains("size_max_bits")) p.size_max_bits = j["size_max_bits"].get<long long>();
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("deadline_mode")) {
      const std::string m = j["deadline_mode"].get<std::string>();
      if (m == "uniform")
        p.deadline_mode = DeadlineMode::kUniform;
      else if (m == "common")
        p.deadline_mode = DeadlineMode::kCommon;
      else
        throw std::invalid_argument("generate: deadline_mode must be 'uniform' or 'common'");
    }
    if (j.contains("num_users")) spec.dims.num_users = j["num_users"].get<int>();
    if (j.contains("num_bs")) spec.dims.num_bs = j["num_bs"].get<int>();
    if (j.contains("num_channels")) spec.dims.num_channels = j["num_channels"].get<int>();
    if (j.contains("num_slots")) spec.dims.num_slots = j["num_slots"].get<int>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("generate: ") + e.what());
  }
  return spec;
}

}  // namespace raed

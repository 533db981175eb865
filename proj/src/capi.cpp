#include "raed.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "raed/bench.hpp"
#include "raed/common_deadline.hpp"
#include "raed/ilp.hpp"
#include "raed/multi.hpp"
#include "raed/oracle.hpp"
#include "raed/plot.hpp"
#include "raed/serialize.hpp"
#include "raed/types.hpp"

struct raed_instance {
  raed::Instance inst;
};

// One of three payload shapes: a single-station outcome, an association
// across stations, or a bare count (moore has no schedule to show).
struct raed_result {
  int served = 0;
  bool has_single = false;
  raed::ScheduleOutcome single;
  std::vector<int> single_energy;
  bool has_assoc = false;
  raed::AssociationOutcome assoc;
  std::vector<std::vector<int>> bs_energy;  // indexed by station id - 1
};

namespace {

thread_local std::string g_error;

template <typename F>
raed_status guarded(F&& f) {
  try {
    f();
    return RAED_OK;
  } catch (const raed::LimitError& e) {
    g_error = e.what();
    return RAED_ERR_LIMIT;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return RAED_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return RAED_ERR_NOMEM;
  } catch (const std::exception& e) {
    g_error = e.what();
    return RAED_ERR_INTERNAL;
  }
}

raed_status fail_arg(const char* msg) {
  g_error = msg;
  return RAED_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<int> energy_row(const raed::Instance& inst, int b) {
  std::vector<int> row(inst.num_slots);
  for (int t = 0; t < inst.num_slots; ++t) row[t] = inst.energy.at(b, t);
  return row;
}

raed_result* result_from_single(const raed::Instance& inst, raed::ScheduleOutcome oc) {
  auto* res = new raed_result;
  res->served = oc.served_count;
  res->has_single = true;
  res->single = std::move(oc);
  res->single_energy = energy_row(inst, 0);
  return res;
}

raed_result* result_from_assoc(const raed::Instance& inst, raed::AssociationOutcome out) {
  auto* res = new raed_result;
  res->served = out.served_total;
  res->has_assoc = true;
  res->assoc = std::move(out);
  for (int b = 0; b < inst.num_bs; ++b) res->bs_energy.push_back(energy_row(inst, b));
  return res;
}

}  // namespace

extern "C" {

const char* raed_version(void) { return "1.0.0"; }

const char* raed_last_error(void) { return g_error.c_str(); }

void raed_string_free(char* s) { std::free(s); }

raed_status raed_instance_generate(const char* spec_json, raed_instance** out) {
  if (!spec_json || !out) return fail_arg("null argument");
  return guarded([&] {
    const raed::GenerateSpec spec = raed::generate_spec_from_json(spec_json);
    auto* handle = new raed_instance{raed::generate_instance(spec.params, spec.dims)};
    *out = handle;
  });
}

raed_status raed_instance_from_json(const char* text, raed_instance** out) {
  if (!text || !out) return fail_arg("null argument");
  return guarded([&] { *out = new raed_instance{raed::instance_from_json(text)}; });
}

raed_status raed_instance_to_json(const raed_instance* inst, char** out) {
  if (!inst || !out) return fail_arg("null argument");
  return guarded([&] { *out = dup_string(raed::instance_to_json(inst->inst)); });
}

void raed_instance_free(raed_instance* inst) { delete inst; }

raed_status raed_run(const raed_instance* inst, const char* algorithm,
                     int energy_per_slot_mode, raed_result** out) {
  if (!inst || !algorithm || !out) return fail_arg("null argument");
  return guarded([&] {
    const raed::Instance& in = inst->inst;
    const auto mode = energy_per_slot_mode ? raed::EnergyChargeMode::kPerSlot
                                           : raed::EnergyChargeMode::kPerSlotChannel;
    const std::string name = algorithm;
    if (name == "scsb1") {
      if (in.num_bs != 1 || in.num_channels != 1)
        throw std::invalid_argument("scsb1 needs one station and one channel");
      *out = result_from_single(in, raed::schedule_scsb1(in.bs_view(0)));
    } else if (name == "scsb2") {
      if (in.num_bs != 1 || in.num_channels != 1)
        throw std::invalid_argument("scsb2 needs one station and one channel");
      *out = result_from_single(in, raed::schedule_scsb2(in.bs_view(0)));
    } else if (name == "mcsb") {
      if (in.num_bs != 1) throw std::invalid_argument("mcsb needs one station");
      *out = result_from_single(in, raed::schedule_mcsb(in.bs_view(0), raed::TiePolicy::kDefault, mode));
    } else if (name == "scmb") {
      *out = result_from_assoc(in, raed::schedule_scmb(in));
    } else if (name == "mcmb") {
      *out = result_from_assoc(in, raed::schedule_mcmb(in, raed::TiePolicy::kDefault, mode));
    } else if (name == "oracle") {
      *out = result_from_assoc(in, raed::solve_exact(in).witness);
    } else if (name == "moore") {
      auto* res = new raed_result;
      res->served = raed::run_algorithm("moore", in, mode, {});
      *out = res;
    } else {
      throw std::invalid_argument("unknown algorithm '" + name + "'");
    }
  });
}

raed_status raed_solve_exact(const raed_instance* inst, long long max_nodes,
                             raed_result** out) {
  if (!inst || !out) return fail_arg("null argument");
  return guarded([&] {
    raed::OracleLimits limits;
    if (max_nodes > 0) limits.max_nodes = max_nodes;
    raed::OracleResult r = raed::solve_exact(inst->inst, limits);
    *out = result_from_assoc(inst->inst, std::move(r.witness));
  });
}

raed_status raed_result_served(const raed_result* res, int* out) {
  if (!res || !out) return fail_arg("null argument");
  *out = res->served;
  return RAED_OK;
}

raed_status raed_result_to_json(const raed_result* res, char** out) {
  if (!res || !out) return fail_arg("null argument");
  return guarded([&] {
    if (res->has_single)
      *out = dup_string(raed::outcome_to_json(res->single));
    else if (res->has_assoc)
      *out = dup_string(raed::association_to_json(res->assoc));
    else
      *out = dup_string("{\n  \"served_count\": " + std::to_string(res->served) + "\n}\n");
  });
}

raed_status raed_result_render(const raed_result* res, char** out) {
  if (!res || !out) return fail_arg("null argument");
  return guarded([&] {
    std::string text;
    if (res->has_single) {
      text = raed::render_schedule(res->single.schedule, res->single_energy);
    } else if (res->has_assoc) {
      for (int bs_id : res->assoc.used_bs) {
        text += "station " + std::to_string(bs_id) + "\n";
        text += raed::render_schedule(res->assoc.per_bs.at(bs_id).schedule,
                                      res->bs_energy.at(bs_id - 1));
      }
      if (res->assoc.used_bs.empty()) text = "no station serves any user\n";
    } else {
      text = "served: " + std::to_string(res->served) + "\n";
    }
    *out = dup_string(text);
  });
}

void raed_result_free(raed_result* res) { delete res; }

raed_status raed_export_ilp(const raed_instance* inst, char** out) {
  if (!inst || !out) return fail_arg("null argument");
  return guarded([&] { *out = dup_string(raed::export_ilp(inst->inst)); });
}

raed_status raed_bench_run(const char* config_json, char** csv_out) {
  if (!config_json || !csv_out) return fail_arg("null argument");
  return guarded([&] {
    const raed::ExperimentConfig cfg = raed::experiment_from_json(config_json);
    *csv_out = dup_string(raed::run_experiment(cfg));
  });
}

raed_status raed_plot_csv(const char* csv_text, char** svg_out, char** warning_out) {
  if (!csv_text || !svg_out) return fail_arg("null argument");
  return guarded([&] {
    std::string warning;
    const std::string svg = raed::plot_csv_to_svg(csv_text, &warning);
    *svg_out = dup_string(svg);
    if (warning_out) *warning_out = warning.empty() ? nullptr : dup_string(warning);
  });
}

}  // extern "C"

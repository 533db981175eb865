#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "raed/generate.hpp"
#include "raed/oracle.hpp"
#include "raed/schedule.hpp"
#include "raed/serialize.hpp"

namespace raed {

// One swept parameter. Values address numeric generation keys by name
// (num_users, num_bs, num_channels, num_slots, poisson_rate, ...).
struct AxisSpec {
  std::string name;
  std::vector<double> values;
};

struct ExperimentConfig {
  std::string figure;
  int realizations = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms;  // scsb1 scsb2 scmb mcsb mcmb oracle moore
  GenerateSpec base;
  AxisSpec axis;                 // primary sweep, becomes the CSV x column
  std::vector<AxisSpec> extra;   // cartesian product, recorded in extra_axes
  EnergyChargeMode mode = EnergyChargeMode::kPerSlotChannel;
  bool record_wall_time = true;  // false pins wall_ms to 0 for byte-stable output
  OracleLimits oracle_limits;
  int workers = 0;               // 0: RAED_WORKERS env var, else 1
};

ExperimentConfig experiment_from_json(const std::string& text);

// Runs every cell of the sweep and returns the full CSV, header included:
//   figure,axis_name,axis_value,extra_axes,algorithm,mean,stderr,realizations,wall_ms
// Per-realization seeds depend only on (seed, cell coordinates, index), so
// results are independent of worker count and of which cells run together.
std::string run_experiment(const ExperimentConfig& cfg,
                           const std::function<void(const std::string&)>& log = nullptr);

// Canonical shortest-round-trip formatting shared by the CSV writer and its
// consumers; integers print without a decimal point.
std::string format_number(double v);

// Served-user count of one named algorithm on one instance; throws
// std::invalid_argument for unknown names or shape mismatches.
int run_algorithm(const std::string& name, const Instance& inst,
                  EnergyChargeMode mode, const OracleLimits& limits);

}  // namespace raed

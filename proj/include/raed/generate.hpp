#pragma once

#include <cstdint>

#include "raed/instance.hpp"
#include "raed/radio.hpp"

namespace raed {

enum class DeadlineMode {
  kUniform,  // d_u uniform over 1..T
  kCommon,   // d_u = T for every user
};

// Scenario parameters for random instances: stations and users dropped
// uniformly in a square, log-distance path loss, full-buffer interference,
// Poisson energy arrivals.
struct GenerationParams {
  double area_side_m = 20.0;
  double pathloss_offset_db = 30.6;
  double pathloss_slope_db = 36.7;   // per decade of distance in metres
  double min_distance_m = 1.0;
  double tx_power_dbm = 30.0;
  double noise_dbm_per_hz = -174.0;
  double bandwidth_hz = 20e6;
  double slot_duration_s = 1e-3;
  double poisson_rate = 0.5;         // energy units per slot per station
  long long size_min_bits = 1'000;
  long long size_max_bits = 1'000'000;
  DeadlineMode deadline_mode = DeadlineMode::kUniform;
  std::uint64_t seed = 1;
};

struct Dims {
  int num_users = 0;
  int num_bs = 1;
  int num_channels = 1;
  int num_slots = 10;
};

// Fully deterministic for a given (params.seed, dims). Requirements larger
// than the horizon are stored as kUnservable.
Instance generate_instance(const GenerationParams& params, const Dims& dims);

// The radio model the generator would use for the given placement draw;
// exposed so the physical-layer path is testable on its own.
RadioModel build_radio_model(const GenerationParams& params, const Dims& dims,
                             const std::vector<double>& user_xy,
                             const std::vector<double>& bs_xy);

}  // namespace raed

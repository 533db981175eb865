#include "raed/generate.hpp"

#include <cmath>
#include <stdexcept>

#include "raed/rng.hpp"

namespace raed {

namespace {

double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

}  // namespace

RadioModel build_radio_model(const GenerationParams& params, const Dims& dims,
                             const std::vector<double>& user_xy,
                             const std::vector<double>& bs_xy) {
  if (static_cast<int>(user_xy.size()) != dims.num_users * 2 ||
      static_cast<int>(bs_xy.size()) != dims.num_bs * 2)
    throw std::invalid_argument("build_radio_model: position array size mismatch");
  RadioModel m;
  m.num_users = dims.num_users;
  m.num_bs = dims.num_bs;
  m.num_channels = dims.num_channels;
  m.tx_power_w.assign(dims.num_bs, dbm_to_watt(params.tx_power_dbm));
  m.bandwidth_hz = params.bandwidth_hz;
  const double channel_bw = params.bandwidth_hz / dims.num_channels;
  m.noise_power_w = dbm_to_watt(params.noise_dbm_per_hz + 10.0 * std::log10(channel_bw));
  m.slot_duration_s = params.slot_duration_s;
  m.gains.resize(static_cast<size_t>(dims.num_users) * dims.num_bs * dims.num_channels);
  for (int u = 0; u < dims.num_users; ++u) {
    for (int b = 0; b < dims.num_bs; ++b) {
      const double dx = user_xy[2 * u] - bs_xy[2 * b];
      const double dy = user_xy[2 * u + 1] - bs_xy[2 * b + 1];
      double d = std::sqrt(dx * dx + dy * dy);
      if (d < params.min_distance_m) d = params.min_distance_m;
      const double pl_db = params.pathloss_offset_db + params.pathloss_slope_db * std::log10(d);
      const double g = std::pow(10.0, -pl_db / 10.0);
      // Path loss is frequency-flat here: every channel sees the same gain.
      for (int c = 0; c < dims.num_channels; ++c)
        m.gains[(static_cast<size_t>(u) * dims.num_bs + b) * dims.num_channels + c] = g;
    }
  }
  m.validate();
  return m;
}

Instance generate_instance(const GenerationParams& params, const Dims& dims) {
  if (dims.num_users < 0 || dims.num_bs < 1 || dims.num_channels < 1 || dims.num_slots < 1)
    throw std::invalid_argument("generate_instance: bad dimensions");
  if (params.size_min_bits < 1 || params.size_max_bits < params.size_min_bits)
    throw std::invalid_argument("generate_instance: bad size range");
  if (params.poisson_rate < 0.0)
    throw std::invalid_argument("generate_instance: negative arrival rate");

  Rng rng(params.seed);

  std::vector<double> bs_xy(static_cast<size_t>(dims.num_bs) * 2);
  for (double& v : bs_xy) v = rng.uniform01() * params.area_side_m;
  std::vector<double> user_xy(static_cast<size_t>(dims.num_users) * 2);
  for (double& v : user_xy) v = rng.uniform01() * params.area_side_m;

  const RadioModel model = build_radio_model(params, dims, user_xy, bs_xy);

  Instance inst;
  inst.num_slots = dims.num_slots;
  inst.num_bs = dims.num_bs;
  inst.num_channels = dims.num_channels;
  inst.users.resize(dims.num_users);
  for (int u = 0; u < dims.num_users; ++u) {
    inst.users[u].size_bits = rng.uniform_int(params.size_min_bits, params.size_max_bits);
    inst.users[u].deadline = params.deadline_mode == DeadlineMode::kCommon
                                 ? dims.num_slots
                                 : static_cast<int>(rng.uniform_int(1, dims.num_slots));
  }
  inst.required.resize(static_cast<size_t>(dims.num_users) * dims.num_bs * dims.num_channels);
  for (int u = 0; u < dims.num_users; ++u)
    for (int b = 0; b < dims.num_bs; ++b)
      for (int c = 0; c < dims.num_channels; ++c) {
        int nu = required_slots(u, b, c, model, inst.users[u]);
        if (nu > dims.num_slots) nu = kUnservable;
        inst.nu(u, b, c) = nu;
      }
  inst.energy.num_bs = dims.num_bs;
  inst.energy.num_slots = dims.num_slots;
  inst.energy.arrivals.resize(static_cast<size_t>(dims.num_bs) * dims.num_slots);
  for (int b = 0; b < dims.num_bs; ++b)
    for (int t = 0; t < dims.num_slots; ++t)
      inst.energy.at(b, t) = rng.poisson(params.poisson_rate);

  inst.validate();
  return inst;
}

}  // namespace raed

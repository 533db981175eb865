#pragma once

#include <vector>

#include "raed/instance.hpp"

namespace raed {

// Physical-layer description from which slot requirements are derived.
// Gains are dimensionless linear power gains; noise_power_w is the AWGN
// power within one channel's bandwidth (bandwidth_hz / num_channels).
struct RadioModel {
  int num_users = 0;
  int num_bs = 0;
  int num_channels = 1;
  std::vector<double> tx_power_w;  // per base station
  double bandwidth_hz = 0.0;       // total system bandwidth
  double noise_power_w = 0.0;
  double slot_duration_s = 0.0;
  std::vector<double> gains;  // [u][b][c], row-major

  double gain(int u, int b, int c) const {
    return gains[(static_cast<size_t>(u) * num_bs + b) * num_channels + c];
  }

  void validate() const;  // throws std::invalid_argument
};

// Signal-to-interference-plus-noise ratio of user u served by station b on
// channel c. Every other station is treated as an always-on interferer on
// the same channel.
double sinr(int u, int b, int c, const RadioModel& m);

// Spectral efficiency in bit/s/Hz for a given SINR (Shannon).
double rate(double sinr_value);

// Number of whole slots needed to deliver req.size_bits over (b, c).
// Returns kUnservable when the rate is zero or the count does not fit an
// int. No horizon clamp here; Instance construction applies nu > T.
int required_slots(int u, int b, int c, const RadioModel& m, const UserRequest& req);

}  // namespace raed

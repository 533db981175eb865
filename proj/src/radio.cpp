#include "raed/radio.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace raed {

void RadioModel::validate() const {
  if (num_users < 0 || num_bs < 1 || num_channels < 1)
    throw std::invalid_argument("RadioModel: bad dimensions");
  if (static_cast<int>(tx_power_w.size()) != num_bs)
    throw std::invalid_argument("RadioModel: tx_power size != num_bs");
  for (double p : tx_power_w)
    if (!(p > 0.0)) throw std::invalid_argument("RadioModel: tx_power must be positive");
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("RadioModel: bandwidth must be positive");
  if (!(noise_power_w > 0.0)) throw std::invalid_argument("RadioModel: noise power must be positive");
  if (!(slot_duration_s > 0.0)) throw std::invalid_argument("RadioModel: slot duration must be positive");
  const size_t want = static_cast<size_t>(num_users) * num_bs * num_channels;
  if (gains.size() != want)
    throw std::invalid_argument("RadioModel: gains size mismatch");
  for (double g : gains)
    if (g < 0.0 || !std::isfinite(g))
      throw std::invalid_argument("RadioModel: gains must be finite and >= 0");
}

double sinr(int u, int b, int c, const RadioModel& m) {
  if (u < 0 || u >= m.num_users || b < 0 || b >= m.num_bs || c < 0 || c >= m.num_channels)
    throw std::invalid_argument("sinr: index out of range");
  const double signal = m.tx_power_w[static_cast<size_t>(b)] * m.gain(u, b, c);
  double interference = 0.0;
  for (int other = 0; other < m.num_bs; ++other) {
    if (other == b) continue;
    interference += m.tx_power_w[static_cast<size_t>(other)] * m.gain(u, other, c);
  }
  return signal / (m.noise_power_w + interference);
}

double rate(double sinr_value) {
  if (sinr_value < 0.0) throw std::invalid_argument("rate: negative sinr");
  return std::log2(1.0 + sinr_value);
}

int required_slots(int u, int b, int c, const RadioModel& m, const UserRequest& req) {
  if (req.size_bits <= 0) throw std::invalid_argument("required_slots: size must be positive");
  const double r = rate(sinr(u, b, c, m));
  if (r <= 0.0) return kUnservable;
  const double slot_bits =
      m.slot_duration_s * (m.bandwidth_hz / m.num_channels) * r;
  const double raw = std::ceil(static_cast<double>(req.size_bits) / slot_bits);
  if (!(raw >= 1.0)) return 1;  // sub-slot payload still occupies one slot
  if (raw > static_cast<double>(kUnservable - 1)) return kUnservable;
  return static_cast<int>(raw);
}

}  // namespace raed

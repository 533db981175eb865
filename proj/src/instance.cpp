#include "raed/instance.hpp"

#include <stdexcept>
#include <string>

namespace raed {

void Instance::validate() const {
  if (num_slots < 1 || num_bs < 1 || num_channels < 1)
    throw std::invalid_argument("Instance: bad dimensions");
  const size_t nu_want = static_cast<size_t>(users.size()) * num_bs * num_channels;
  if (required.size() != nu_want)
    throw std::invalid_argument("Instance: requirement tensor size mismatch");
  if (energy.num_bs != num_bs || energy.num_slots != num_slots)
    throw std::invalid_argument("Instance: energy profile dimensions mismatch");
  if (energy.arrivals.size() != static_cast<size_t>(num_bs) * num_slots)
    throw std::invalid_argument("Instance: energy arrivals size mismatch");
  for (int a : energy.arrivals)
    if (a < 0) throw std::invalid_argument("Instance: negative energy arrival");
  for (size_t i = 0; i < users.size(); ++i) {
    const UserRequest& r = users[i];
    if (r.size_bits <= 0)
      throw std::invalid_argument("Instance: user " + std::to_string(i + 1) + " has non-positive size");
    if (r.deadline < 1 || r.deadline > num_slots)
      throw std::invalid_argument("Instance: user " + std::to_string(i + 1) + " deadline out of range");
  }
  for (int v : required)
    if (v < 1) throw std::invalid_argument("Instance: requirement below 1");
}

BsView Instance::bs_view(int b) const {
  std::vector<int> ids(users.size());
  for (size_t i = 0; i < users.size(); ++i) ids[i] = static_cast<int>(i) + 1;
  return bs_view(b, ids);
}

BsView Instance::bs_view(int b, const std::vector<int>& user_ids) const {
  if (b < 0 || b >= num_bs) throw std::invalid_argument("bs_view: station index out of range");
  BsView v;
  v.num_slots = num_slots;
  v.num_channels = num_channels;
  v.energy.resize(num_slots);
  for (int t = 0; t < num_slots; ++t) v.energy[t] = energy.at(b, t);
  v.users.reserve(user_ids.size());
  for (int id : user_ids) {
    if (id < 1 || id > num_users()) throw std::invalid_argument("bs_view: user id out of range");
    BsUser bu;
    bu.id = id;
    bu.deadline = users[id - 1].deadline;
    bu.nu.resize(num_channels);
    for (int c = 0; c < num_channels; ++c) bu.nu[c] = nu(id - 1, b, c);
    v.users.push_back(std::move(bu));
  }
  return v;
}

}  // namespace raed

#include "raed/ilp.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "raed/types.hpp"

namespace raed {

namespace {

std::string coeff(int nu) {
  if (nu == 1) return "1";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", 1.0 / nu);
  return buf;
}

}  // namespace

std::string export_ilp(const Instance& inst) {
  inst.validate();
  const int U = inst.num_users();
  const int B = inst.num_bs;
  const int C = inst.num_channels;
  const int T = inst.num_slots;
  if (static_cast<long long>(U) * B * C * T > 2000)
    throw std::invalid_argument("export_ilp: instance too large for text export");

  auto xname = [](int u, int b, int c, int t) {
    return "x_" + std::to_string(u + 1) + "_" + std::to_string(b + 1) + "_" +
           std::to_string(c + 1) + "_" + std::to_string(t + 1);
  };
  auto zname = [](int b, int t) {
    return "z_" + std::to_string(b + 1) + "_" + std::to_string(t + 1);
  };
  auto ok = [&](int u, int b, int c) {
    const int n = inst.nu(u, b, c);
    return servable(n) && n <= T;
  };

  std::ostringstream os;
  os << "\\ user-to-cell assignment model; one energy unit per transmission\n";
  os << "\\ unusable (user, station, channel) combinations are fixed to zero\n";
  os << "Maximize\n obj:";
  bool first = true;
  for (int u = 0; u < U; ++u)
    for (int b = 0; b < B; ++b)
      for (int c = 0; c < C; ++c) {
        if (!ok(u, b, c)) continue;
        for (int t = 0; t < T; ++t) {
          os << (first ? " " : " + ") << coeff(inst.nu(u, b, c)) << ' ' << xname(u, b, c, t);
          first = false;
        }
      }
  if (first) os << " 0 " << zname(0, 0);
  os << "\nSubject To\n";

  // At most one channel per user within a station: forbid every pair of
  // placements on distinct channels.
  for (int u = 0; u < U; ++u)
    for (int b = 0; b < B; ++b)
      for (int c1 = 0; c1 < C; ++c1)
        for (int c2 = c1 + 1; c2 < C; ++c2)
          for (int t1 = 0; t1 < T; ++t1)
            for (int t2 = 0; t2 < T; ++t2)
              os << " chan_excl_" << u + 1 << '_' << b + 1 << '_' << c1 + 1 << '_' << t1 + 1
                 << '_' << c2 + 1 << '_' << t2 + 1 << ": " << xname(u, b, c1, t1) << " + "
                 << xname(u, b, c2, t2) << " <= 1\n";

  // At most one station per user.
  for (int u = 0; u < U; ++u)
    for (int b1 = 0; b1 < B; ++b1)
      for (int b2 = b1 + 1; b2 < B; ++b2)
        for (int c1 = 0; c1 < C; ++c1)
          for (int c2 = 0; c2 < C; ++c2)
            for (int t1 = 0; t1 < T; ++t1)
              for (int t2 = 0; t2 < T; ++t2)
                os << " bs_excl_" << u + 1 << '_' << b1 + 1 << '_' << c1 + 1 << '_' << t1 + 1
                   << '_' << b2 + 1 << '_' << c2 + 1 << '_' << t2 + 1 << ": "
                   << xname(u, b1, c1, t1) << " + " << xname(u, b2, c2, t2) << " <= 1\n";

  // One user per (station, channel, slot) cell.
  for (int b = 0; b < B; ++b)
    for (int c = 0; c < C; ++c)
      for (int t = 0; t < T; ++t) {
        os << " cell_cap_" << b + 1 << '_' << c + 1 << '_' << t + 1 << ":";
        for (int u = 0; u < U; ++u) os << (u == 0 ? " " : " + ") << xname(u, b, c, t);
        os << " <= 1\n";
      }

  // Battery recursion and initial level.
  for (int b = 0; b < B; ++b) {
    os << " init_" << b + 1 << ": " << zname(b, 0) << " = " << inst.energy.at(b, 0) << "\n";
    for (int t = 0; t + 1 < T; ++t) {
      os << " bal_" << b + 1 << '_' << t + 2 << ": " << zname(b, t + 1) << " - " << zname(b, t);
      for (int u = 0; u < U; ++u)
        for (int c = 0; c < C; ++c) os << " + " << xname(u, b, c, t);
      os << " = " << inst.energy.at(b, t + 1) << "\n";
    }
  }

  // No transmission from an empty battery: a slot's total consumption at a
  // station is capped by the level entering that slot. Capping the sum (not
  // each variable alone) is what stops two same-slot transmissions from
  // borrowing a unit that only arrives with the next slot.
  for (int b = 0; b < B; ++b)
    for (int t = 0; t < T; ++t) {
      os << " gate_" << b + 1 << '_' << t + 1 << ":";
      for (int u = 0; u < U; ++u)
        for (int c = 0; c < C; ++c)
          os << (u == 0 && c == 0 ? " " : " + ") << xname(u, b, c, t);
      os << " - " << zname(b, t) << " <= 0\n";
    }

  // A user is either fully scheduled on a (station, channel) or absent
  // from it. Big-M is the horizon.
  for (int u = 0; u < U; ++u)
    for (int b = 0; b < B; ++b)
      for (int c = 0; c < C; ++c) {
        if (!ok(u, b, c)) continue;
        const int nu = inst.nu(u, b, c);
        for (int t = 0; t < T; ++t) {
          os << " chunk_lo_" << u + 1 << '_' << b + 1 << '_' << c + 1 << '_' << t + 1 << ":";
          for (int s = 0; s < T; ++s) os << (s == 0 ? " " : " + ") << xname(u, b, c, s);
          os << " - " << nu << ' ' << xname(u, b, c, t) << " >= 0\n";
          os << " chunk_hi_" << u + 1 << '_' << b + 1 << '_' << c + 1 << '_' << t + 1 << ":";
          for (int s = 0; s < T; ++s) os << (s == 0 ? " " : " + ") << xname(u, b, c, s);
          if (T - nu != 0) os << " + " << T - nu << ' ' << xname(u, b, c, t);
          os << " <= " << T << "\n";
        }
      }

  // Deadlines: a placement at slot t implies t within the user's deadline.
  for (int u = 0; u < U; ++u)
    for (int b = 0; b < B; ++b)
      for (int c = 0; c < C; ++c)
        for (int t = 0; t < T; ++t)
          os << " due_" << u + 1 << '_' << b + 1 << '_' << c + 1 << '_' << t + 1 << ": "
             << t + 1 << ' ' << xname(u, b, c, t) << " <= " << inst.users[u].deadline << "\n";

  os << "Bounds\n";
  for (int b = 0; b < B; ++b)
    for (int t = 0; t < T; ++t) os << ' ' << zname(b, t) << " >= 0\n";
  for (int u = 0; u < U; ++u)
    for (int b = 0; b < B; ++b)
      for (int c = 0; c < C; ++c) {
        if (ok(u, b, c)) continue;
        for (int t = 0; t < T; ++t) os << ' ' << xname(u, b, c, t) << " = 0\n";
      }

  os << "Binaries\n";
  for (int u = 0; u < U; ++u)
    for (int b = 0; b < B; ++b)
      for (int c = 0; c < C; ++c)
        for (int t = 0; t < T; ++t) os << ' ' << xname(u, b, c, t) << "\n";
  os << "End\n";
  return os.str();
}

}  // namespace raed

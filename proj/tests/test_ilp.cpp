#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "raed/ilp.hpp"
#include "raed/rng.hpp"
#include "raed/types.hpp"

using namespace raed;

namespace {

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(RAED_TEST_DATA_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Distinct model variables: x_ / z_ tokens at word boundaries.
std::set<std::string> var_names(const std::string& text) {
  std::set<std::string> out;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x' && text[i] != 'z') continue;
    if (i + 1 >= text.size() || text[i + 1] != '_') continue;
    if (i > 0 && (std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_'))
      continue;
    size_t j = i + 1;
    while (j < text.size() &&
           (text[j] == '_' || std::isdigit(static_cast<unsigned char>(text[j]))))
      ++j;
    out.insert(text.substr(i, j - i));
    i = j;
  }
  return out;
}

Instance single_cell() {
  Instance inst;
  inst.num_slots = 1;
  inst.num_bs = 1;
  inst.num_channels = 1;
  inst.users = {{10, 1}};
  inst.required = {1};
  inst.energy = {1, 1, {1}};
  return inst;
}

Instance two_channels() {
  Instance inst;
  inst.num_slots = 2;
  inst.num_bs = 1;
  inst.num_channels = 2;
  inst.users = {{10, 1}, {10, 2}};
  inst.required = {1, 2, 2, kUnservable};
  inst.energy = {1, 2, {1, 1}};
  return inst;
}

Instance two_stations() {
  Instance inst;
  inst.num_slots = 2;
  inst.num_bs = 2;
  inst.num_channels = 1;
  inst.users = {{10, 2}, {10, 2}};
  inst.required = {1, 1, 2, kUnservable};
  inst.energy = {2, 2, {1, 0, 0, 1}};
  return inst;
}

}  // namespace

TEST_SUITE("ilp") {

TEST_CASE("export matches the frozen single-cell model byte for byte") {
  CHECK(export_ilp(single_cell()) == read_file("ilp_single_cell.lp"));
}

TEST_CASE("export matches the frozen two-channel model byte for byte") {
  CHECK(export_ilp(two_channels()) == read_file("ilp_two_channels.lp"));
}

TEST_CASE("export matches the frozen two-station model byte for byte") {
  CHECK(export_ilp(two_stations()) == read_file("ilp_two_stations.lp"));
}

TEST_CASE("variable count is users*stations*channels*slots plus stations*slots") {
  CHECK(var_names(export_ilp(single_cell())).size() == 1 + 1);
  CHECK(var_names(export_ilp(two_channels())).size() == 2 * 1 * 2 * 2 + 1 * 2);
  CHECK(var_names(export_ilp(two_stations())).size() == 2 * 2 * 1 * 2 + 2 * 2);

  Rng r(515151);
  for (int trial = 0; trial < 50; ++trial) {
    Instance inst;
    inst.num_slots = static_cast<int>(r.uniform_int(1, 4));
    inst.num_bs = static_cast<int>(r.uniform_int(1, 3));
    inst.num_channels = static_cast<int>(r.uniform_int(1, 2));
    const int U = static_cast<int>(r.uniform_int(1, 4));
    for (int u = 0; u < U; ++u)
      inst.users.push_back({r.uniform_int(1, 500), static_cast<int>(r.uniform_int(1, inst.num_slots))});
    for (int i = 0; i < U * inst.num_bs * inst.num_channels; ++i)
      inst.required.push_back(r.uniform_int(1, 8) == 1
                                  ? kUnservable
                                  : static_cast<int>(r.uniform_int(1, inst.num_slots + 2)));
    inst.energy.num_bs = inst.num_bs;
    inst.energy.num_slots = inst.num_slots;
    for (int i = 0; i < inst.num_bs * inst.num_slots; ++i)
      inst.energy.arrivals.push_back(static_cast<int>(r.uniform_int(0, 2)));
    const std::string text = export_ilp(inst);
    REQUIRE(var_names(text).size() ==
            static_cast<size_t>(U * inst.num_bs * inst.num_channels * inst.num_slots +
                                inst.num_bs * inst.num_slots));
  }
}

TEST_CASE("objective uses reciprocal requirements at full precision") {
  Instance inst = single_cell();
  inst.num_slots = 3;
  inst.users[0].deadline = 3;
  inst.required = {3};
  inst.energy = {1, 3, {3, 0, 0}};
  const std::string text = export_ilp(inst);
  CHECK(text.find(" obj: 0.333333333333 x_1_1_1_1") != std::string::npos);
}

TEST_CASE("sections appear in solver order") {
  const std::string text = export_ilp(two_stations());
  const size_t a = text.find("Maximize\n");
  const size_t b = text.find("Subject To\n");
  const size_t c = text.find("Bounds\n");
  const size_t d = text.find("Binaries\n");
  const size_t e = text.rfind("End\n");
  REQUIRE(a != std::string::npos);
  REQUIRE(b != std::string::npos);
  REQUIRE(c != std::string::npos);
  REQUIRE(d != std::string::npos);
  REQUIRE(e != std::string::npos);
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c < d);
  CHECK(d < e);
  CHECK(e == text.size() - 4);
}

TEST_CASE("an instance with no servable pair still emits a valid objective") {
  Instance inst = single_cell();
  inst.required = {kUnservable};
  const std::string text = export_ilp(inst);
  CHECK(text.find(" obj: 0 z_1_1") != std::string::npos);
  CHECK(text.find(" x_1_1_1_1 = 0") != std::string::npos);
}

TEST_CASE("oversized instances are refused") {
  Instance inst;
  inst.num_slots = 1;
  inst.num_bs = 1;
  inst.num_channels = 1;
  for (int u = 0; u < 2001; ++u) {
    inst.users.push_back({10, 1});
    inst.required.push_back(1);
  }
  inst.energy = {1, 1, {1}};
  CHECK_THROWS_AS(export_ilp(inst), std::invalid_argument);
}

}  // TEST_SUITE

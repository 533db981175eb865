#include "raed/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "raed/common_deadline.hpp"
#include "raed/multi.hpp"
#include "raed/rng.hpp"
#include "raed/types.hpp"

namespace raed {

using nlohmann::json;

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void apply_axis(GenerateSpec& spec, const std::string& name, double value) {
  auto as_int = [&](const char* what) {
    const int v = static_cast<int>(value);
    if (static_cast<double>(v) != value)
      throw std::invalid_argument(std::string("axis ") + what + " needs an integer value");
    return v;
  };
  GenerationParams& p = spec.params;
  if (name == "num_users")
    spec.dims.num_users = as_int("num_users");
  else if (name == "num_bs")
    spec.dims.num_bs = as_int("num_bs");
  else if (name == "num_channels")
    spec.dims.num_channels = as_int("num_channels");
  else if (name == "num_slots")
    spec.dims.num_slots = as_int("num_slots");
  else if (name == "poisson_rate")
    p.poisson_rate = value;
  else if (name == "area_side_m")
    p.area_side_m = value;
  else if (name == "tx_power_dbm")
    p.tx_power_dbm = value;
  else if (name == "bandwidth_hz")
    p.bandwidth_hz = value;
  else if (name == "slot_duration_s")
    p.slot_duration_s = value;
  else if (name == "size_min_bits")
    p.size_min_bits = as_int("size_min_bits");
  else if (name == "size_max_bits")
    p.size_max_bits = as_int("size_max_bits");
  else
    throw std::invalid_argument("unknown axis name '" + name + "'");
}

AxisSpec axis_from_j(const json& j) {
  AxisSpec a;
  a.name = j.at("name").get<std::string>();
  a.values = j.at("values").get<std::vector<double>>();
  if (a.values.empty()) throw std::invalid_argument("axis '" + a.name + "' has no values");
  return a;
}

struct Cell {
  GenerateSpec spec;
  double axis_value = 0;
  std::string extra_desc;    // "name=value;name=value" or empty
  std::uint64_t cell_seed = 0;
};

}  // namespace

std::string format_number(double v) {
  char buf[40];
  if (v == static_cast<long long>(v) && v > -1e15 && v < 1e15) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
    return buf;
  }
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

int run_algorithm(const std::string& name, const Instance& inst,
                  EnergyChargeMode mode, const OracleLimits& limits) {
  if (name == "scsb1") {
    if (inst.num_bs != 1 || inst.num_channels != 1)
      throw std::invalid_argument("scsb1 needs one station and one channel");
    return schedule_scsb1(inst.bs_view(0)).served_count;
  }
  if (name == "scsb2") {
    if (inst.num_bs != 1 || inst.num_channels != 1)
      throw std::invalid_argument("scsb2 needs one station and one channel");
    return schedule_scsb2(inst.bs_view(0)).served_count;
  }
  if (name == "mcsb") {
    if (inst.num_bs != 1) throw std::invalid_argument("mcsb needs one station");
    return schedule_mcsb(inst.bs_view(0), TiePolicy::kDefault, mode).served_count;
  }
  if (name == "scmb") return schedule_scmb(inst).served_total;
  if (name == "mcmb") return schedule_mcmb(inst, TiePolicy::kDefault, mode).served_total;
  if (name == "oracle") return solve_exact(inst, limits).optimal;
  if (name == "moore") {
    if (inst.num_bs != 1 || inst.num_channels != 1)
      throw std::invalid_argument("moore needs one station and one channel");
    std::vector<int> nu, deadline;
    for (int u = 0; u < inst.num_users(); ++u) {
      nu.push_back(inst.nu(u, 0, 0));
      deadline.push_back(inst.users[u].deadline);
    }
    return moore_hodgson(nu, deadline, inst.num_slots);
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

ExperimentConfig experiment_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
  const std::set<std::string> known{"figure",     "realizations", "seed",
                                    "algorithms", "generate",     "axis",
                                    "extra_axes", "energy_per_slot_mode",
                                    "record_wall_time", "oracle_max_nodes"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) throw std::invalid_argument("experiment: unknown key '" + key + "'");
  }
  ExperimentConfig cfg;
  try {
    cfg.figure = j.at("figure").get<std::string>();
    cfg.realizations = j.at("realizations").get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    if (j.contains("generate")) cfg.base = generate_spec_from_json(j["generate"].dump());
    cfg.axis = axis_from_j(j.at("axis"));
    if (j.contains("extra_axes"))
      for (const json& e : j["extra_axes"]) cfg.extra.push_back(axis_from_j(e));
    if (j.contains("energy_per_slot_mode") && j["energy_per_slot_mode"].get<bool>())
      cfg.mode = EnergyChargeMode::kPerSlot;
    if (j.contains("record_wall_time")) cfg.record_wall_time = j["record_wall_time"].get<bool>();
    if (j.contains("oracle_max_nodes"))
      cfg.oracle_limits.max_nodes = j["oracle_max_nodes"].get<long long>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment: ") + e.what());
  }
  if (cfg.realizations < 1) throw std::invalid_argument("experiment: realizations must be >= 1");
  if (cfg.algorithms.empty()) throw std::invalid_argument("experiment: no algorithms listed");
  return cfg;
}

std::string run_experiment(const ExperimentConfig& cfg,
                           const std::function<void(const std::string&)>& log) {
  int workers = cfg.workers;
  if (workers == 0) {
    const char* env = std::getenv("RAED_WORKERS");
    workers = env ? std::atoi(env) : 1;
  }
  if (workers < 1) workers = 1;

  // Cartesian product: extra axes outermost in listed order, primary axis
  // innermost. The cell seed folds in every coordinate by name so that
  // adding an axis or reordering values never silently reuses a stream.
  std::vector<Cell> cells;
  std::vector<size_t> idx(cfg.extra.size(), 0);
  while (true) {
    GenerateSpec spec = cfg.base;
    std::string extra_desc;
    std::uint64_t seed = cfg.seed;
    for (size_t i = 0; i < cfg.extra.size(); ++i) {
      const AxisSpec& ax = cfg.extra[i];
      const double v = ax.values[idx[i]];
      apply_axis(spec, ax.name, v);
      if (!extra_desc.empty()) extra_desc += ';';
      extra_desc += ax.name + "=" + format_number(v);
      seed = mix_seed(seed, fnv1a64(ax.name + "=" + format_number(v)));
    }
    for (double v : cfg.axis.values) {
      Cell cell;
      cell.spec = spec;
      apply_axis(cell.spec, cfg.axis.name, v);
      cell.axis_value = v;
      cell.extra_desc = extra_desc;
      cell.cell_seed = mix_seed(seed, fnv1a64(cfg.axis.name + "=" + format_number(v)));
      cells.push_back(std::move(cell));
    }
    size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < cfg.extra[k].values.size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }

  // Exact solves only run when every cell fits the solver's size caps;
  // refusing up front beats dying hours into a sweep.
  for (const std::string& alg : cfg.algorithms)
    if (alg == "oracle")
      for (const Cell& cell : cells) {
        const Dims& d = cell.spec.dims;
        if (d.num_users > cfg.oracle_limits.max_users || d.num_bs > cfg.oracle_limits.max_bs ||
            d.num_channels > cfg.oracle_limits.max_channels ||
            d.num_slots > cfg.oracle_limits.max_slots)
          throw std::invalid_argument(
              "oracle cannot run cell " + cfg.axis.name + "=" + format_number(cell.axis_value) +
              (cell.extra_desc.empty() ? "" : " [" + cell.extra_desc + "]") +
              ": dimensions exceed the exact-solve caps");
      }

  std::ostringstream out;
  out << "figure,axis_name,axis_value,extra_axes,algorithm,mean,stderr,realizations,wall_ms\n";
  for (const Cell& cell : cells) {
    // Instances are shared by all algorithms of the cell; each realization
    // draws from its own seed so any subset of reps reproduces exactly.
    std::vector<Instance> instances(cfg.realizations);
    {
      std::atomic<int> next{0};
      auto gen = [&] {
        for (int i; (i = next.fetch_add(1)) < cfg.realizations;) {
          GenerateSpec s = cell.spec;
          s.params.seed = mix_seed(cell.cell_seed, static_cast<std::uint64_t>(i));
          instances[i] = generate_instance(s.params, s.dims);
        }
      };
      if (workers == 1) {
        gen();
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(gen);
        for (auto& th : pool) th.join();
      }
    }
    for (const std::string& alg : cfg.algorithms) {
      const auto start = std::chrono::steady_clock::now();
      std::vector<int> served(cfg.realizations, 0);
      std::atomic<int> next{0};
      std::string failure;
      std::mutex failure_mu;
      auto work = [&] {
        for (int i; (i = next.fetch_add(1)) < cfg.realizations;) {
          try {
            served[i] = run_algorithm(alg, instances[i], cfg.mode, cfg.oracle_limits);
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lk(failure_mu);
            if (failure.empty())
              failure = alg + " failed on realization " + std::to_string(i) + ": " + e.what();
          }
        }
      };
      if (workers == 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
      }
      if (!failure.empty()) throw std::runtime_error(failure);
      long double sum = 0;
      for (int v : served) sum += v;
      const long double mean = sum / cfg.realizations;
      long double ss = 0;
      for (int v : served) ss += (v - mean) * (v - mean);
      const long double sem =
          cfg.realizations > 1 ? std::sqrt(ss / (cfg.realizations - 1) / cfg.realizations) : 0.0L;
      const auto elapsed = std::chrono::steady_clock::now() - start;
      const long long wall_ms =
          cfg.record_wall_time
              ? std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
              : 0;
      out << cfg.figure << ',' << cfg.axis.name << ',' << format_number(cell.axis_value) << ','
          << cell.extra_desc << ',' << alg << ',' << format_number(static_cast<double>(mean))
          << ',' << format_number(static_cast<double>(sem)) << ',' << cfg.realizations << ','
          << wall_ms << '\n';
      if (log)
        log(cfg.figure + " " + cfg.axis.name + "=" + format_number(cell.axis_value) +
            (cell.extra_desc.empty() ? "" : " [" + cell.extra_desc + "]") + " " + alg +
            " mean=" + format_number(static_cast<double>(mean)) + " (" +
            std::to_string(wall_ms) + " ms)");
    }
  }
  return out.str();
}

}  // namespace raed

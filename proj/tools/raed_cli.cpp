// Command-line front end. Talks to the library exclusively through the C
// interface in raed.h; JSON is only touched here for config plumbing.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "raed.h"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError("cannot write '" + path + "'");
  out << content;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

[[noreturn]] void die(raed_status rc) {
  std::cerr << "error: " << raed_last_error() << "\n";
  std::exit(rc == RAED_ERR_INVALID_ARGUMENT ? 2 : 1);
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  raed_string_free(s);
  return out;
}

struct InstanceHandle {
  raed_instance* ptr = nullptr;
  ~InstanceHandle() { raed_instance_free(ptr); }
};

struct ResultHandle {
  raed_result* ptr = nullptr;
  ~ResultHandle() { raed_result_free(ptr); }
};

InstanceHandle load_instance(const std::string& path) {
  InstanceHandle h;
  const std::string text = read_file(path);
  if (raed_status rc = raed_instance_from_json(text.c_str(), &h.ptr); rc != RAED_OK) die(rc);
  return h;
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

// Overrides the seed inside a JSON config without disturbing other keys.
std::string patch_seed(const std::string& text, std::uint64_t seed) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    std::cerr << "error: config is not valid JSON\n";
    std::exit(2);
  }
  j["seed"] = seed;
  return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resource allocation for energy-harvesting cellular networks"};
  app.require_subcommand(1);

  std::string config_path, out_path, algorithms = "scsb1";
  std::uint64_t seed = 0;
  bool seed_set = false, per_slot = false, do_render = false;
  long long max_nodes = 0;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", config_path, "JSON (or CSV, for plot) input path");
    if (config_required) opt->required();
    cmd->add_option("--out", out_path, "output path (default stdout)");
  };

  CLI::App* generate = app.add_subcommand("generate", "draw a random instance");
  add_common(generate, false);
  generate->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
    seed_set = true;
  });

  CLI::App* solve = app.add_subcommand("solve", "run scheduling algorithms on an instance");
  add_common(solve, true);
  solve->add_option("--algorithms", algorithms,
                    "comma-separated: scsb1,scsb2,scmb,mcsb,mcmb,oracle,moore");
  solve->add_flag("--energy-per-slot-mode", per_slot,
                  "charge one energy unit per active slot instead of per (slot, channel)");
  solve->add_flag("--render", do_render, "print text strips of the schedules");

  CLI::App* oracle = app.add_subcommand("oracle", "exact optimum by branch and bound");
  add_common(oracle, true);
  oracle->add_option("--max-nodes", max_nodes, "search-node budget (0 keeps the default)");

  CLI::App* bench = app.add_subcommand("bench", "run an experiment sweep to CSV");
  add_common(bench, true);
  bench->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
    seed_set = true;
  });

  CLI::App* plot = app.add_subcommand("plot", "render benchmark CSV to SVG, one file per figure");
  add_common(plot, true);

  CLI::App* export_ilp = app.add_subcommand("export-ilp", "write the LP-format formulation");
  add_common(export_ilp, true);

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(generate)) {
    std::string text = config_path.empty() ? "{}" : read_file(config_path);
    if (seed_set) text = patch_seed(text, seed);
    InstanceHandle inst;
    if (raed_status rc = raed_instance_generate(text.c_str(), &inst.ptr); rc != RAED_OK) die(rc);
    char* out = nullptr;
    if (raed_status rc = raed_instance_to_json(inst.ptr, &out); rc != RAED_OK) die(rc);
    emit(out_path, take_string(out));
    return 0;
  }

  if (app.got_subcommand(solve)) {
    InstanceHandle inst = load_instance(config_path);
    const std::vector<std::string> names = split_csv_list(algorithms);
    if (names.empty()) {
      std::cerr << "error: --algorithms lists nothing\n";
      return 2;
    }
    json combined = json::object();
    for (const std::string& name : names) {
      ResultHandle res;
      if (raed_status rc = raed_run(inst.ptr, name.c_str(), per_slot ? 1 : 0, &res.ptr);
          rc != RAED_OK)
        die(rc);
      int served = 0;
      raed_result_served(res.ptr, &served);
      std::cout << name << ": served " << served << "\n";
      if (do_render) {
        char* text = nullptr;
        if (raed_status rc = raed_result_render(res.ptr, &text); rc != RAED_OK) die(rc);
        std::cout << take_string(text);
      }
      if (!out_path.empty()) {
        char* rj = nullptr;
        if (raed_status rc = raed_result_to_json(res.ptr, &rj); rc != RAED_OK) die(rc);
        combined[name] = json::parse(take_string(rj));
      }
    }
    if (!out_path.empty()) {
      const std::string text =
          names.size() == 1 ? combined[names[0]].dump(2) + "\n" : combined.dump(2) + "\n";
      write_file(out_path, text);
    }
    return 0;
  }

  if (app.got_subcommand(oracle)) {
    InstanceHandle inst = load_instance(config_path);
    ResultHandle res;
    if (raed_status rc = raed_solve_exact(inst.ptr, max_nodes, &res.ptr); rc != RAED_OK) die(rc);
    int served = 0;
    raed_result_served(res.ptr, &served);
    std::cout << "optimal: " << served << "\n";
    if (!out_path.empty()) {
      char* rj = nullptr;
      if (raed_status rc = raed_result_to_json(res.ptr, &rj); rc != RAED_OK) die(rc);
      write_file(out_path, take_string(rj));
    }
    return 0;
  }

  if (app.got_subcommand(bench)) {
    std::string text = read_file(config_path);
    if (seed_set) text = patch_seed(text, seed);
    char* csv = nullptr;
    if (raed_status rc = raed_bench_run(text.c_str(), &csv); rc != RAED_OK) die(rc);
    emit(out_path, take_string(csv));
    return 0;
  }

  if (app.got_subcommand(plot)) {
    const std::string csv = read_file(config_path);
    std::istringstream in(csv);
    std::string header, line;
    if (!std::getline(in, header)) {
      std::cerr << "error: empty CSV\n";
      return 2;
    }
    // one output file per figure id (first column)
    std::map<std::string, std::string> groups;
    std::vector<std::string> order;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const std::string fig = line.substr(0, line.find(','));
      if (!groups.count(fig)) order.push_back(fig);
      groups[fig] += line + "\n";
    }
    if (order.empty()) {
      std::cerr << "warning: no data rows, nothing to plot\n";
      return 0;
    }
    const std::string dir = out_path.empty() ? "." : out_path;
    const bool single_file = order.size() == 1 && dir.size() > 4 &&
                             dir.compare(dir.size() - 4, 4, ".svg") == 0;
    if (!single_file && !out_path.empty()) std::filesystem::create_directories(dir);
    for (const std::string& fig : order) {
      char* svg = nullptr;
      char* warning = nullptr;
      const std::string one = header + "\n" + groups[fig];
      if (raed_status rc = raed_plot_csv(one.c_str(), &svg, &warning); rc != RAED_OK) die(rc);
      if (warning) std::cerr << "warning: " << take_string(warning) << "\n";
      const std::string path = single_file ? dir : dir + "/" + fig + ".svg";
      write_file(path, take_string(svg));
      std::cout << path << "\n";
    }
    return 0;
  }

  if (app.got_subcommand(export_ilp)) {
    InstanceHandle inst = load_instance(config_path);
    char* lp = nullptr;
    if (raed_status rc = raed_export_ilp(inst.ptr, &lp); rc != RAED_OK) die(rc);
    emit(out_path, take_string(lp));
    return 0;
  }

  return 2;
}

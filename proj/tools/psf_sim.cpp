// psf-sim: runs a phase-shift-and-forward simulation study from a JSON config.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "psf/harness.hpp"
#include "psf/plot_data.hpp"

namespace {

using nlohmann::json;

int fail(const std::string& type, const std::string& message, int code) {
  const json err{{"status", "error"}, {"error", {{"type", type}, {"message", message}}}, {"exit_code", code}};
  std::cerr << err.dump() << std::endl;
  return code;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-shift-and-forward sensor network simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string methods;

  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory for CSV and JSON files");
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Master seed, overrides the config");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  CLI::Option* methods_opt = run->add_option("--methods", methods, "Comma-separated methods, overrides the config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 64);
  }

  json doc;
  {
    std::ifstream in(config_path);
    if (!in) return fail("io", "cannot open config file: " + config_path, 66);
    try {
      in >> doc;
    } catch (const json::exception& e) {
      return fail("config", config_path + ": " + e.what(), 65);
    }
  }
  if (!doc.is_object()) return fail("config", "config: expected a JSON object", 65);
  if (*seed_opt) doc["seed"] = seed;
  if (*methods_opt) doc["methods"] = split_list(methods);

  try {
    const psf::ExperimentConfig config = psf::experiment_config_from_json(doc);
    const psf::ExperimentResult result = psf::run_experiment(config, psf::RunOptions{jobs});
    const std::string name = std::filesystem::path(config_path).stem().string();
    const psf::PlotFiles files =
        psf::emit_plot_data(result.records, out_dir, name, psf::to_json(config), config.seed, result.wall_time);
    const json ok{{"status", "ok"},
                  {"csv", files.csv},
                  {"sidecar", files.sidecar},
                  {"records", result.records.size()},
                  {"wall_time", result.wall_time}};
    std::cout << ok.dump() << std::endl;
    return 0;
  } catch (const psf::ConfigError& e) {
    return fail("config", e.what(), 65);
  } catch (const std::invalid_argument& e) {
    return fail("config", e.what(), 65);
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), 70);
  }
}

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "polariton/profile_io.hpp"
#include "polariton/util.hpp"
#include "run_config.hpp"
#include "scenarios.hpp"

namespace fs = std::filesystem;

namespace {

using namespace polariton;
using namespace polariton::cli;

int do_run(const std::string& config_path, const std::string& out_dir_flag, int threads,
           bool no_plots, const std::optional<std::uint64_t>& seed) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  RunOptions opt;
  opt.threads = threads > 0 ? threads : default_thread_count();
  opt.plots = !no_plots;
  opt.seed = seed;
  const fs::path out_dir =
      out_dir_flag.empty() ? fs::path(cfg.out_directory) : fs::path(out_dir_flag);

  try {
    fs::create_directories(out_dir);
    const auto artifacts = run_scenario(cfg, out_dir, opt);

    auto sorted = artifacts;
    std::sort(sorted.begin(), sorted.end());
    nlohmann::json listing = nlohmann::json::array();
    for (const auto& rel : sorted) {
      listing.push_back({{"path", rel.generic_string()},
                         {"bytes", fs::file_size(out_dir / rel)},
                         {"fnv1a64", fnv1a_file_hex(out_dir / rel)}});
    }
    nlohmann::json manifest;
    manifest["scenario"] = cfg.scenario;
    manifest["artifacts"] = listing;
    {
      std::ofstream out(out_dir / "manifest.json", std::ios::binary);
      if (!out) throw std::runtime_error("cannot write manifest.json");
      out << manifest.dump(2) << "\n";
    }

    for (const auto& rel : artifacts) {
      std::cout << "wrote " << (out_dir / rel).generic_string() << "\n";
    }
    std::cout << "wrote " << (out_dir / "manifest.json").generic_string() << " ("
              << artifacts.size() << " artifacts)\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int do_list(bool machine) {
  for (const auto& info : scenario_catalog()) {
    if (machine) {
      std::cout << info.name << "\t" << info.required_keys << "\t" << info.description
                << "\n";
    } else {
      std::cout << info.name << "\n    " << info.description << "\n    required: "
                << info.required_keys << "\n";
    }
  }
  return 0;
}

int do_validate(const std::string& config_path) {
  try {
    const auto cfg = load_run_config(config_path);
    std::cout << "ok: scenario \"" << cfg.scenario << "\"\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}

int do_convert(const std::string& input, const std::string& to,
               const std::string& output) {
  try {
    const fs::path out_path(output);
    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
    const auto out = convert_profile(input, to, output);
    std::cout << "wrote " << out.generic_string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polariton sweep engine: runs configured scenarios and writes "
               "CSV/JSON artifacts with a hashed manifest."};
  app.require_subcommand(1);

  std::string config_path, out_dir_flag, input_path, to_format, output_path;
  int threads = 0;
  bool no_plots = false, machine = false;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "Run a scenario from a JSON config");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out-dir", out_dir_flag, "Overrides output.directory");
  run->add_option("--threads", threads,
                  "Worker threads (default: POLARITON_THREADS, else hardware)");
  run->add_flag("--no-plots", no_plots, "Skip plot artifacts");
  auto* seed_opt = run->add_option("--seed", seed, "Overrides the config seed");

  auto* ls = app.add_subcommand("list-scenarios", "Describe the available scenarios");
  ls->add_flag("--machine", machine, "Tab-separated name/keys/description lines");

  auto* vc = app.add_subcommand("validate-config", "Schema-check a config and exit");
  vc->add_option("--config", config_path, "Config file")->required();

  auto* cp = app.add_subcommand("convert-profile",
                                "Re-encode a profile payload (binary <-> csv)");
  cp->add_option("--input", input_path, "Source manifest")->required();
  cp->add_option("--to", to_format, "Target encoding: binary | csv")->required();
  cp->add_option("--output", output_path, "Destination manifest")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (run->parsed()) {
    return do_run(config_path, out_dir_flag, threads, no_plots,
                  seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
  }
  if (ls->parsed()) return do_list(machine);
  if (vc->parsed()) return do_validate(config_path);
  return do_convert(input_path, to_format, output_path);
}

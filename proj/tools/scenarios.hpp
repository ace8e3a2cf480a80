#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace polariton::cli {

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::string required_keys;
};

const std::vector<ScenarioInfo>& scenario_catalog();

struct RunOptions {
  int threads = 1;
  bool plots = true;
  std::optional<std::uint64_t> seed;  // overrides the config seed when set
};

// Runs the configured scenario, writing every artifact under out_dir (which
// must exist). Returns the artifact paths relative to out_dir in creation
// order. The config is never mutated; identical configs and seeds produce
// byte-identical artifacts.
std::vector<std::filesystem::path> run_scenario(const RunConfig& cfg,
                                                const std::filesystem::path& out_dir,
                                                const RunOptions& opt);

}  // namespace polariton::cli

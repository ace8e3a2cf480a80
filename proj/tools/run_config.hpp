#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polariton/params.hpp"

namespace polariton::cli {

// Configs are JSON with strict key checking: any key outside the schema, or a
// section that does not belong to the selected scenario, is rejected before
// any computation runs. Units at the boundary follow the key suffixes
// (_GHz, _THz, _T, _um, _ps); everything behind the parser is SI.

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inclusive linear axis; points == 1 collapses to {min}.
struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  int points = 0;

  std::vector<double> values() const;
};

struct ToyConfig {
  std::string mode;                 // dispersion | collapse | term-toggles | transmission-map
  double pattern_overlap = 1.0;     // profile-overlap parameter in [0,1]
  int grid_n = 48;
  std::string terms = "full";       // full | decoupled | rwa | antiresonant | a2-only | int-only
  AxisSpec b_sweep_t;               // [T]
  double b_field_t = 0.81;          // collapse: fixed field [T]
  int path_points = 40;             // collapse: samples per parameter path
  AxisSpec frequency_ghz;           // transmission-map probe axis
  std::string pol_in = "y";
  std::string pol_out = "y";
};

struct IngestConfig {
  std::vector<std::filesystem::path> manifests;  // resolved against the config dir
  double b_field_t = 0.81;
  double z_ref_um = 0.0;
};

struct FilmConfig {
  double b_field_t = 2.0;
  double scattering_rate_ghz = 10.0;
  double sheet_thickness_um = 2.0;
  double host_eps = 12.96;
  double substrate_eps = 12.96;
  double substrate_thickness_um = 30.0;
  AxisSpec frequency_ghz;
};

struct SpectroConfig {
  AxisSpec b_fields_t;
  // Time-domain demonstration trace.
  int n_samples = 2048;
  double dt_ps = 0.2;
  double decay_time_ps = 20.0;
  double echo_delay_ps = 25.0;
  double echo_amplitude = 0.3;
  double t_cut_ps = 300.0;
  int pad_factor = 4;
  // Synthetic line-shape series that is fitted and tracked.
  double fwhm_ghz = 18.0;
  double amplitude = 1.0;
  double baseline = 0.2;
  double etalon_center_ghz = 780.0;
  double etalon_width_ghz = 6.0;
  double etalon_depth = 0.12;
  AxisSpec frequency_ghz;
  double noise_level = 0.01;
  std::uint64_t seed = 7;
  AxisSpec mass_scan;               // effective-mass ratio candidates
};

struct RunConfig {
  std::string scenario;             // toy | ingest-profiles | magnetofilm | spectro-pipeline
  PhysParams physical;
  std::string out_directory = "out";
  bool plots = true;
  std::optional<ToyConfig> toy;
  std::optional<IngestConfig> ingest;
  std::optional<FilmConfig> film;
  std::optional<SpectroConfig> spectro;
  std::filesystem::path config_dir; // directory of the source file
};

// Parses and schema-validates; throws ConfigError with a `path:line:` prefix
// wherever the offending key can be located in the source text. Referenced
// profile manifests must exist.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace polariton::cli

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "polariton/mode_profile.hpp"

namespace polariton {

// Mode-profile interchange format: a text manifest plus a payload file.
//
// Manifest (UTF-8, `key = value` per line, '#' comments):
//   format_version = 1
//   lattice_a_um = 333.0
//   omega_GHz = 339.0
//   Q = 72.0
//   polarization = y            # x | y
//   p_index = 1
//   grid_nx = 64
//   grid_ny = 64
//   grid_nz = 0                 # optional; >0 makes the profile z-resolved
//   z_samples_um =              # comma-separated, required when grid_nz > 0
//   components = ey             # comma-separated subset of ex,ey,ez
//   normalization_constant = 1.0
//   data_format = binary        # binary | csv
//   data_layout = row_major_float64_little_endian
//   data_file = mode1.bin       # path relative to the manifest
//   eps_file =                  # optional dielectric payload, same layout
//
// Payload: the listed components concatenated in listed order, each
// nx*ny(*nz) float64 values with x fastest, then y, then z. binary is raw
// little-endian; csv is one decimal value per line in the same order.
// Loaded fields are multiplied by normalization_constant (declared scale to
// the engine's unit-energy normalization; raw amplitudes are not trusted).
//
// Loaders throw std::runtime_error with file/line context on malformed input:
// unknown keys, missing required keys, payload size mismatch, or values out
// of range.

struct ProfileManifest {
  int format_version = 1;
  double lattice_a_um = 0.0;
  double omega_ghz = 0.0;
  double q = 0.0;
  Pol polarization = Pol::y;
  int p_index = 1;
  int nx = 0, ny = 0, nz = 0;
  std::vector<double> z_um;
  std::vector<std::string> components;   // subset of {ex,ey,ez}
  double normalization_constant = 1.0;
  std::string data_format = "binary";
  std::string data_layout = "row_major_float64_little_endian";
  std::string data_file;
  std::string eps_file;
};

ProfileManifest read_profile_manifest(const std::filesystem::path& path);
void write_profile_manifest(const ProfileManifest& m, const std::filesystem::path& path);

// In-plane profile (grid_nz == 0 manifests, or the z slice nearest z_ref of a
// z-resolved one).
ModeProfile load_mode_profile(const std::filesystem::path& manifest_path,
                              double z_ref_um = 0.0);

// Full volumetric profile; requires grid_nz > 0.
VolumeProfile load_volume_profile(const std::filesystem::path& manifest_path);

// Writes manifest + payload. Components taken from the non-empty fields of
// the profile; format "binary" or "csv".
void save_mode_profile(const ModeProfile& mp, const std::filesystem::path& manifest_path,
                       const std::string& data_format = "binary");

// Rewrites the payload (and eps payload if any) in the other encoding,
// emitting a new manifest next to the new payload. Returns the new manifest
// path. Values survive the csv round trip exactly (hex-free shortest
// round-trip decimal formatting).
std::filesystem::path convert_profile(const std::filesystem::path& manifest_path,
                                      const std::string& to_format,
                                      const std::filesystem::path& out_manifest);

}  // namespace polariton

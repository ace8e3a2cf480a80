#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace polariton {

// Unit conversions at the interface boundary; everything internal is SI
// (rad/s, m, T, s).
namespace units {
inline constexpr double ghz = 1e9;                    // Hz per GHz
inline constexpr double thz = 1e12;                   // Hz per THz
inline constexpr double um = 1e-6;                    // m per micrometre
double rad_per_s_from_ghz(double f_ghz);
double ghz_from_rad_per_s(double w);
}  // namespace units

// Runs fn(0..n-1) across up to `threads` workers; order of side effects per
// index is the caller's responsibility. threads <= 1 runs inline.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

// POLARITON_THREADS env var if set and positive, else hardware concurrency.
int default_thread_count();

// Deterministic CSV writing: fixed shortest-round-trip formatting, '\n'
// endings, no locale. Columns joined with ','.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  ~CsvWriter();
  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);

 private:
  struct Impl;
  Impl* impl_;
};

std::string format_double(double v);  // shortest round-trip decimal

// FNV-1a 64-bit over a file's bytes, hex string; manifest content hashing.
std::string fnv1a_file_hex(const std::filesystem::path& path);

}  // namespace polariton

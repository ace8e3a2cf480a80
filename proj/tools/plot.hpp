#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace polariton::cli {

// Convenience figures regenerated from the CSV data; nothing downstream reads
// them back, so they carry no numeric contract beyond being deterministic.

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

void write_svg_lines(const std::filesystem::path& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series);

// ASCII PGM, linearly rescaled to 0..255; row 0 of the matrix is the top row.
void write_pgm_heatmap(const std::filesystem::path& path, const Eigen::MatrixXd& values);

}  // namespace polariton::cli

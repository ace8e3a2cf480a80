#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace polariton {

// Real scalar field sampled on a uniform grid over one unit cell [0,a)^2.
// Sample points x_i = i a/nx, y_j = j a/ny (periodic, right endpoint excluded),
// so a plain mean is the midpoint rule for the cell average and is spectrally
// exact for band-limited fields. Storage row-major with x fastest:
// v[iy*nx + ix].
struct Grid2D {
  int nx = 0;
  int ny = 0;
  std::vector<double> v;

  Grid2D() = default;
  Grid2D(int nx_, int ny_) : nx(nx_), ny(ny_), v(static_cast<size_t>(nx_) * ny_, 0.0) {
    if (nx_ <= 0 || ny_ <= 0) throw std::invalid_argument("Grid2D: non-positive size");
  }

  double& at(int ix, int iy) { return v[static_cast<size_t>(iy) * nx + ix]; }
  double at(int ix, int iy) const { return v[static_cast<size_t>(iy) * nx + ix]; }
  bool empty() const { return v.empty(); }
  size_t size() const { return v.size(); }
};

// Cell average (1/a^2) \int f dxdy of a sampled field.
double cell_mean(const Grid2D& f);

// Cell average of a pointwise product, (1/a^2) \int f g dxdy.
// Grids must have identical shape.
double cell_mean_product(const Grid2D& f, const Grid2D& g);

}  // namespace polariton

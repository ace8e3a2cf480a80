#include "polariton/grid.hpp"

namespace polariton {

double cell_mean(const Grid2D& f) {
  if (f.empty()) throw std::invalid_argument("cell_mean: empty grid");
  double s = 0.0;
  for (double x : f.v) s += x;
  return s / static_cast<double>(f.v.size());
}

double cell_mean_product(const Grid2D& f, const Grid2D& g) {
  if (f.empty() || g.empty()) throw std::invalid_argument("cell_mean_product: empty grid");
  if (f.nx != g.nx || f.ny != g.ny) {
    throw std::invalid_argument("cell_mean_product: shape mismatch");
  }
  double s = 0.0;
  for (size_t i = 0; i < f.v.size(); ++i) s += f.v[i] * g.v[i];
  return s / static_cast<double>(f.v.size());
}

}  // namespace polariton

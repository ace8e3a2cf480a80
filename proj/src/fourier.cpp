#include "polariton/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polariton {

std::complex<double> FourierField::coeff(GIndex k) const {
  auto it = std::lower_bound(g.begin(), g.end(), k);
  if (it != g.end() && *it == k) return c[static_cast<size_t>(it - g.begin())];
  return {0.0, 0.0};
}

void FourierField::insert(GIndex k, std::complex<double> value) {
  auto it = std::lower_bound(g.begin(), g.end(), k);
  const auto pos = static_cast<size_t>(it - g.begin());
  if (it != g.end() && *it == k) {
    c[pos] += value;
  } else {
    g.insert(it, k);
    c.insert(c.begin() + static_cast<long>(pos), value);
  }
}

FourierField fourier_decompose(const Grid2D& f, int cutoff, double drop_tol) {
  if (f.empty()) throw std::invalid_argument("fourier_decompose: empty grid");
  if (cutoff < 0) throw std::invalid_argument("fourier_decompose: negative cutoff");
  if (f.nx <= 2 * cutoff || f.ny <= 2 * cutoff) {
    throw std::invalid_argument("fourier_decompose: grid too coarse for cutoff"
                                " (needs n > 2*cutoff to avoid aliasing)");
  }

  // Precompute the 1D phase tables exp(-2 pi i m k / n) for each axis.
  const int side = 2 * cutoff + 1;
  const auto phases = [](int n, int cut) {
    std::vector<std::complex<double>> tab(static_cast<size_t>(2 * cut + 1) * n);
    for (int m = -cut; m <= cut; ++m) {
      for (int k = 0; k < n; ++k) {
        const double arg = -2.0 * M_PI * m * k / n;
        tab[static_cast<size_t>(m + cut) * n + k] = {std::cos(arg), std::sin(arg)};
      }
    }
    return tab;
  };
  const auto px = phases(f.nx, cutoff);
  const auto py = phases(f.ny, cutoff);

  FourierField out;
  out.g.reserve(static_cast<size_t>(side) * side);
  out.c.reserve(static_cast<size_t>(side) * side);
  const double inv_n = 1.0 / (static_cast<double>(f.nx) * f.ny);
  for (int mx = -cutoff; mx <= cutoff; ++mx) {
    for (int my = -cutoff; my <= cutoff; ++my) {
      std::complex<double> acc = 0.0;
      for (int iy = 0; iy < f.ny; ++iy) {
        std::complex<double> row = 0.0;
        const double* vrow = &f.v[static_cast<size_t>(iy) * f.nx];
        const auto* pxm = &px[static_cast<size_t>(mx + cutoff) * f.nx];
        for (int ix = 0; ix < f.nx; ++ix) row += vrow[ix] * pxm[ix];
        acc += row * py[static_cast<size_t>(my + cutoff) * f.ny + iy];
      }
      out.g.push_back({mx, my});   // already in lexicographic order
      out.c.push_back(acc * inv_n);
    }
  }

  double cmax = 0.0;
  for (const auto& z : out.c) cmax = std::max(cmax, std::abs(z));
  if (cmax > 0.0 && drop_tol > 0.0) {
    FourierField pruned;
    for (size_t i = 0; i < out.g.size(); ++i) {
      if (std::abs(out.c[i]) >= drop_tol * cmax) {
        pruned.g.push_back(out.g[i]);
        pruned.c.push_back(out.c[i]);
      }
    }
    return pruned;
  }
  return out;
}

Grid2D fourier_reconstruct(const FourierField& f, int nx, int ny) {
  Grid2D out(nx, ny);
  for (size_t i = 0; i < f.g.size(); ++i) {
    const int mx = f.g[i].mx, my = f.g[i].my;
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const double arg = 2.0 * M_PI * (static_cast<double>(mx) * ix / nx +
                                         static_cast<double>(my) * iy / ny);
        out.at(ix, iy) += std::real(f.c[i] * std::complex<double>(std::cos(arg), std::sin(arg)));
      }
    }
  }
  return out;
}

std::complex<double> fourier_inner(const FourierField& a, const FourierField& b) {
  // Both sorted: single merge pass.
  std::complex<double> s = 0.0;
  size_t i = 0, j = 0;
  while (i < a.g.size() && j < b.g.size()) {
    if (a.g[i] < b.g[j]) {
      ++i;
    } else if (b.g[j] < a.g[i]) {
      ++j;
    } else {
      s += a.c[i] * std::conj(b.c[j]);
      ++i;
      ++j;
    }
  }
  return s;
}

}  // namespace polariton

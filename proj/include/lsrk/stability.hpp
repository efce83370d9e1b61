#pragma once

#include <complex>
#include <string>
#include <vector>

#include "lsrk/scheme.hpp"

namespace lsrk {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Parses "min:max".
Interval parse_interval(const std::string& text);

/// |R(z)| <= 1 sampled on an inclusive nx x ny grid; row 0 is im.lo.
struct StabilityRaster {
  Interval re;
  Interval im;
  int nx = 0;
  int ny = 0;
  std::vector<unsigned char> inside;  // row-major, ny rows of nx

  bool at(int ix, int iy) const { return inside[static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(ix)] != 0; }
  double re_at(int ix) const { return nx == 1 ? re.lo : re.lo + (re.hi - re.lo) * ix / (nx - 1); }
  double im_at(int iy) const { return ny == 1 ? im.lo : im.lo + (im.hi - im.lo) * iy / (ny - 1); }
  /// Area of the inside cells, each counted as one grid cell.
  double inside_area() const;
};

/// R(z) = 1 + sum_k gamma_k z^k.
std::complex<double> stability_polynomial(const std::vector<double>& gamma, std::complex<double> z);

StabilityRaster stability_region(const std::vector<double>& gamma, Interval re, Interval im, int nx, int ny);
StabilityRaster stability_region(const Scheme& scheme, Interval re, Interval im, int nx, int ny);

/// Inside points with at least one outside 4-neighbour, "re,im" per line.
std::string boundary_csv(const StabilityRaster& r);
/// Plain graymap, inside = 1, top row = im.hi.
std::string raster_pgm(const StabilityRaster& r);

}  // namespace lsrk

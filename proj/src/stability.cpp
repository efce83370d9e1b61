#include "lsrk/stability.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "lsrk/conditions.hpp"

namespace lsrk {

namespace {

// Rational text first so "1/3" works, then plain decimal.
double parse_endpoint(const std::string& text) {
  try {
    return Rational::parse(text).to_double();
  } catch (const std::invalid_argument&) {
  }
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return x;
}

}  // namespace

Interval parse_interval(const std::string& text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw std::invalid_argument("expected min:max, got '" + text + "'");
  const Interval out{parse_endpoint(text.substr(0, colon)), parse_endpoint(text.substr(colon + 1))};
  if (!(out.lo < out.hi)) throw std::invalid_argument("empty interval '" + text + "'");
  return out;
}

double StabilityRaster::inside_area() const {
  const double dx = nx > 1 ? (re.hi - re.lo) / (nx - 1) : 0.0;
  const double dy = ny > 1 ? (im.hi - im.lo) / (ny - 1) : 0.0;
  std::size_t count = 0;
  for (auto v : inside) count += v;
  return static_cast<double>(count) * dx * dy;
}

std::complex<double> stability_polynomial(const std::vector<double>& gamma, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) acc = (acc + *it) * z;
  return 1.0 + acc;
}

StabilityRaster stability_region(const std::vector<double>& gamma, Interval re, Interval im, int nx, int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid sizes must be positive");
  StabilityRaster r{re, im, nx, ny, {}};
  r.inside.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const auto R = stability_polynomial(gamma, {r.re_at(ix), r.im_at(iy)});
      r.inside[static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(ix)] =
          std::norm(R) <= 1.0 ? 1 : 0;
    }
  }
  return r;
}

StabilityRaster stability_region(const Scheme& scheme, Interval re, Interval im, int nx, int ny) {
  const auto gamma = std::visit(
      [](const auto& f) {
        std::vector<double> out;
        for (const auto& g : linear_coeffs(tableau_of(f))) out.push_back(g.to_double());
        return out;
      },
      scheme.forms_variant());
  return stability_region(gamma, re, im, nx, ny);
}

std::string boundary_csv(const StabilityRaster& r) {
  std::ostringstream out;
  out << "re,im\n";
  char buf[80];
  for (int iy = 0; iy < r.ny; ++iy) {
    for (int ix = 0; ix < r.nx; ++ix) {
      if (!r.at(ix, iy)) continue;
      const bool edge = (ix > 0 && !r.at(ix - 1, iy)) || (ix + 1 < r.nx && !r.at(ix + 1, iy)) ||
                        (iy > 0 && !r.at(ix, iy - 1)) || (iy + 1 < r.ny && !r.at(ix, iy + 1));
      if (!edge) continue;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r.re_at(ix), r.im_at(iy));
      out << buf;
    }
  }
  return out.str();
}

std::string raster_pgm(const StabilityRaster& r) {
  std::ostringstream out;
  out << "P2\n" << r.nx << " " << r.ny << "\n1\n";
  for (int iy = r.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < r.nx; ++ix) out << (ix ? " " : "") << (r.at(ix, iy) ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

}  // namespace lsrk

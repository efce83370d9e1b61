#include <cmath>

#include "doctest.h"
#include "lsrk/stability.hpp"
#include "lsrk/registry.hpp"

using namespace lsrk;

TEST_CASE("intervals") {
  const auto i = parse_interval("-4:1");
  CHECK(i.lo == -4.0);
  CHECK(i.hi == 1.0);
  CHECK(parse_interval("-1/2:0.25").lo == -0.5);
  CHECK_THROWS_AS(parse_interval("1:-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interval("1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interval("1/0:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interval("0:2x"), std::invalid_argument);
}

TEST_CASE("stability polynomial") {
  const std::vector<double> euler{1.0};
  CHECK(std::abs(stability_polynomial(euler, {-1.0, 0.0})) == doctest::Approx(0.0));
  CHECK(std::abs(stability_polynomial({1.0, 0.5}, {-2.0, 0.0})) == doctest::Approx(1.0));
}

TEST_CASE("forward Euler region is the unit disk at -1") {
  const auto r = stability_region(std::vector<double>{1.0}, {-2.5, 0.5}, {-1.5, 1.5}, 301, 301);
  CHECK(r.at(150, 150) == (std::abs(std::complex<double>(r.re_at(150) + 1.0, r.im_at(150))) <= 1.0));
  for (int iy = 0; iy < r.ny; iy += 7)
    for (int ix = 0; ix < r.nx; ix += 7) {
      const double dist = std::abs(std::complex<double>(r.re_at(ix) + 1.0, r.im_at(iy)));
      if (std::abs(dist - 1.0) > 0.02) CHECK(r.at(ix, iy) == (dist < 1.0));
    }
  CHECK(r.inside_area() == doctest::Approx(M_PI).epsilon(0.02));
}

TEST_CASE("schemes sharing gamma_1..gamma_4 have identical regions") {
  const auto ref = stability_region(registry_get("43-1"), {-4, 1}, {-4, 4}, 120, 120);
  for (const auto& name : {"43-2", "43-3", "43-4"}) {
    const auto r = stability_region(registry_get(name), {-4, 1}, {-4, 4}, 120, 120);
    CHECK(r.inside == ref.inside);
    CHECK(raster_pgm(r) == raster_pgm(ref));
  }
}

TEST_CASE("area converges under refinement") {
  const auto s = registry_get("53-1");
  const auto coarse = stability_region(s, {-4, 1}, {-4, 4}, 200, 200);
  const auto fine = stability_region(s, {-4, 1}, {-4, 4}, 399, 399);
  CHECK(std::abs(fine.inside_area() - coarse.inside_area()) < 0.02 * fine.inside_area());
}

TEST_CASE("output formats") {
  const auto r = stability_region(std::vector<double>{1.0}, {-2, 0}, {-1, 1}, 5, 3);
  const auto pgm = raster_pgm(r);
  CHECK(pgm.rfind("P2\n5 3\n1\n", 0) == 0);
  const auto csv = boundary_csv(r);
  CHECK(csv.rfind("re,im\n", 0) == 0);
  CHECK(csv.find("-1,0\n") == std::string::npos);  // centre is interior
  CHECK_THROWS_AS(stability_region(std::vector<double>{1.0}, {-2, 0}, {-1, 1}, 0, 3), std::invalid_argument);
}

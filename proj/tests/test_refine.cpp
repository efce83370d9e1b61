#include <cmath>

#include "doctest.h"
#include "lsrk/convert.hpp"
#include "lsrk/refine.hpp"
#include "lsrk/registry.hpp"

using namespace lsrk;

namespace {

constexpr int kBits = 300;

LowStorageForm<ExtFloat> berland(int bits) { return at_precision(*registry_get("64-berland").decimal().lowstorage, bits); }

std::map<std::string, ExtFloat> berland_pins(const LowStorageForm<ExtFloat>& f) {
  return {{"B6", ExtFloat::parse("0.27", kBits)}, {"A6", parameter_value(f, "A6")}, {"B5", parameter_value(f, "B5")}};
}

// Every unpinned parameter scaled by (1 + rel).
LowStorageForm<ExtFloat> perturbed(LowStorageForm<ExtFloat> f, const std::map<std::string, ExtFloat>& pins,
                                   const char* rel) {
  const auto one_plus = ExtFloat(1.0, kBits) + ExtFloat::parse(rel, kBits);
  for (const auto& name : lowstorage_parameter_names(f.stages()))
    if (!pins.count(name)) f = with_parameter(f, name, parameter_value(f, name) * one_plus);
  return f;
}

double max_difference(const LowStorageForm<ExtFloat>& x, const LowStorageForm<ExtFloat>& y) {
  double worst = 0;
  for (const auto& name : lowstorage_parameter_names(x.stages()))
    worst = std::max(worst, abs(parameter_value(x, name) - parameter_value(y, name)).to_double());
  return worst;
}

}  // namespace

TEST_CASE("stored six-stage coefficients satisfy the fourth-order conditions") {
  const auto r = residuals_extended(registry_get("64-berland"), 4, 256);
  CHECK(r.entries.size() == 8);
  CHECK(r.max_abs.to_double() < 1e-40);
  CHECK(r.max_abs.precision() == 256);
  CHECK_THROWS_AS(residuals_extended(registry_get("64-berland"), 4, 100), std::invalid_argument);
}

TEST_CASE("rational schemes evaluated in extended precision") {
  const auto r = residuals_extended(registry_get("43-1"), 3, 256);
  CHECK(r.max_abs.to_double() < 1e-70);
  CHECK(residuals_extended(registry_get("rk4-classic"), 4, 128).max_abs.to_double() < 1e-35);
}

TEST_CASE("truncating one coefficient raises the residual to the truncation level") {
  const auto f = berland(256);
  const auto text = parameter_value(f, "A3").to_string();
  // drop the last ten significant digits of the mantissa
  const auto e = text.find('e');
  const auto truncated = ExtFloat::parse(text.substr(0, e - 10) + text.substr(e), 256);
  const auto g = with_parameter(f, "A3", truncated);
  double worst = 0;
  for (const auto& x : condition_residuals(g, 4)) worst = std::max(worst, std::abs(x.to_double()));
  CHECK(worst > 1e-36);
  CHECK(worst < 1e-28);
}

TEST_CASE("parameter names and access") {
  CHECK(lowstorage_parameter_names(3) == std::vector<std::string>{"A2", "A3", "B1", "B2", "B3"});
  const auto f = berland(128);
  CHECK(parameter_value(f, "B6") == ExtFloat::parse("0.27", 128));
  CHECK_THROWS_AS(parameter_value(f, "A1"), std::invalid_argument);
  CHECK_THROWS_AS(parameter_value(f, "C2"), std::invalid_argument);
  CHECK_THROWS_AS(parameter_value(f, "B7"), std::invalid_argument);
}

TEST_CASE("conversion at precision round trips") {
  for (int bits : {128, 256, 300}) {
    const auto f = berland(bits);
    const auto g = a_to_lowstorage(lowstorage_to_a(f));
    const auto tol = std::ldexp(1.0, -(bits - 10));
    for (const auto& name : lowstorage_parameter_names(6)) {
      const auto x = parameter_value(f, name), y = parameter_value(g, name);
      CHECK(abs(x - y) <= abs(x) * ExtFloat(tol, bits));
    }
  }
}

TEST_CASE("jacobian matches central differences") {
  const int bits = 256;
  const auto f = berland(bits);
  const auto names = lowstorage_parameter_names(6);
  const auto J = condition_jacobian(f, names, 4);
  REQUIRE(J.size() == 8);
  const auto step = ldexp(ExtFloat(1.0, bits), -bits / 2);
  const auto rel = ldexp(ExtFloat(1.0, bits), -bits / 4);
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto x = parameter_value(f, names[j]);
    const auto up = condition_residuals(with_parameter(f, names[j], x + step), 4);
    const auto down = condition_residuals(with_parameter(f, names[j], x - step), 4);
    ExtFloat scale(1.0, bits);
    for (std::size_t k = 0; k < J.size(); ++k) scale = std::max(scale, abs(J[k][j]));
    for (std::size_t k = 0; k < J.size(); ++k) {
      const auto fd = (up[k] - down[k]) / (step + step);
      CHECK_MESSAGE(abs(fd - J[k][j]) <= rel * scale, names[j] << " row " << k);
    }
  }
}

TEST_CASE("pinned Newton recovers the stored point") {
  const auto exact = berland(kBits);
  const auto pins = berland_pins(exact);
  const auto r = newton_refine(perturbed(exact, pins, "1e-6"), pins, 4, kBits);
  CHECK(r.iterations <= 10);
  CHECK(max_difference(r.form, exact) < 1e-30);
  CHECK(r.history.back().to_double() < std::ldexp(1.0, -(kBits - 20)));
}

TEST_CASE("Newton converges quadratically near the root") {
  const auto exact = berland(kBits);
  const auto pins = berland_pins(exact);
  const auto r = newton_refine(perturbed(exact, pins, "1e-12"), pins, 4, kBits);
  REQUIRE(r.history.size() >= 3);
  // compare successive log-norms while well above the precision floor
  const double floor_log = std::log(std::ldexp(1.0, -(kBits - 40)));
  int compared = 0;
  for (std::size_t k = 0; k + 1 < r.history.size(); ++k) {
    const double now = std::log(r.history[k].to_double());
    const double next = std::log(r.history[k + 1].to_double());
    if (next < floor_log || now > -2) continue;
    CHECK(next / now >= 1.8);
    ++compared;
  }
  CHECK(compared >= 1);
}

TEST_CASE("starting at the root needs at most one iteration") {
  const auto exact = berland(kBits);
  CHECK(newton_refine(exact, berland_pins(exact), 4, kBits).iterations <= 1);
}

TEST_CASE("Newton argument errors") {
  const auto f = berland(256);
  std::map<std::string, ExtFloat> two{{"B6", parameter_value(f, "B6")}, {"A6", parameter_value(f, "A6")}};
  try {
    newton_refine(f, two, 4, 256);
    FAIL("expected a dimension error");
  } catch (const DimensionError& e) {
    CHECK(std::string(e.what()).find("9") != std::string::npos);
  }
  std::map<std::string, ExtFloat> bad{{"B9", ExtFloat(1.0, 256)}};
  CHECK_THROWS_AS(newton_refine(f, bad, 4, 256), std::invalid_argument);
}

TEST_CASE("Newton reports a singular system") {
  // Two stages, A2 pinned: conditions B1 + B2 (A2 + 1) = 1 and B1 B2 = 1/2 in
  // the unknowns (B1, B2) have determinant B1 - B2 (A2 + 1), zero here.
  const LowStorageForm<ExtFloat> f({ExtFloat(0.0, 256), ExtFloat(1.0, 256)}, {ExtFloat(1.0, 256), ExtFloat(0.5, 256)});
  std::map<std::string, ExtFloat> pins{{"A2", ExtFloat(1.0, 256)}};
  CHECK_THROWS_AS(newton_refine(f, pins, 2, 256), SingularJacobianError);
}

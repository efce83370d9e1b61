#include <cmath>
#include <limits>

#include "doctest.h"
#include "lsrk/integrate.hpp"
#include "lsrk/registry.hpp"
#include "support.hpp"

using namespace lsrk;

namespace {

std::vector<Rational> halvings(int from, int count) {
  std::vector<Rational> h;
  for (int k = 0; k < count; ++k) h.push_back(Rational(1, from << k));
  return h;
}

}  // namespace

TEST_CASE("register count is fixed at two") {
  CHECK(LowStorageRegisters<double>::kRegisterCount == 2);
  CHECK(sizeof(LowStorageRegisters<double>) == 2 * sizeof(double));
}

TEST_CASE("test problems") {
  for (auto id : {ProblemId::p1, ProblemId::p2, ProblemId::p3}) {
    const auto p = make_problem(id);
    CHECK(p.t_end == Rational(20));
    // exact solution satisfies the ODE (central difference)
    for (double t : {0.5, 3.0, 11.0}) {
      const double d = 1e-5;
      const double slope = (p.exact(t + d) - p.exact(t - d)) / (2 * d);
      CHECK(slope == doctest::Approx(p.rhs(t, p.exact(t))).epsilon(1e-6));
    }
    CHECK(p.exact(0) == doctest::Approx(1.0));
  }
  const auto lin = make_problem(ProblemId::linear, -2.0);
  CHECK(lin.t_end == Rational(1));
  CHECK(lin.exact(1.0) == doctest::Approx(std::exp(-2.0)));
  CHECK_THROWS_AS(make_problem(ProblemId::p3).rhs(0.0, -1.0), StepError);
  CHECK(parse_problem("linear") == ProblemId::linear);
  CHECK(parse_problem("2") == ProblemId::p2);
  CHECK_THROWS_AS(parse_problem("4"), std::invalid_argument);
}

TEST_CASE("a-form and A-form steps agree") {
  const double eps = std::numeric_limits<double>::epsilon();
  for (const auto& name : registry_names()) {
    const auto s = registry_get(name);
    if (name == "rk4-classic") continue;
    const auto t = double_tableau(s);
    const auto f = double_lowstorage(s);
    for (auto id : {ProblemId::p1, ProblemId::p2, ProblemId::p3, ProblemId::linear}) {
      const auto p = make_problem(id);
      auto rhs = [&p](double tt, double y) { return p.rhs(tt, y); };
      double y = 1.0, tn = 0.0;
      const double h = 0.05;
      for (int n = 0; n < 40; ++n, tn += h) {
        const double ya = step_a_form(t, rhs, tn, y, h);
        const double yl = step_lowstorage(f, rhs, tn, y, h);
        CHECK_MESSAGE(std::abs(ya - yl) <= 100 * eps * std::abs(ya), name);
        y = ya;
      }
    }
  }
}

TEST_CASE("steps are exact in rational arithmetic on f = t") {
  auto rhs = [](const Rational& t, const Rational&) { return t; };
  for (const auto& name : registry_names()) {
    const auto s = registry_get(name);
    if (s.number_kind() != NumberKind::rational || !s.rational().lowstorage) continue;
    const auto& t = *s.rational().tableau;
    const auto& f = *s.rational().lowstorage;
    const Rational t0(1, 3), y0(2), h(1, 7);
    const auto ya = step_a_form(t, rhs, t0, y0, h);
    const auto yl = step_lowstorage(f, rhs, t0, y0, h);
    CHECK(ya == yl);
    CHECK(yl == test::lowstorage_step_oracle(f, rhs, t0, y0, h));
    // second order or better integrates a linear-in-t right-hand side exactly
    CHECK(ya == y0 + (pow(t0 + h, 2) - pow(t0, 2)) / 2);
  }
}

TEST_CASE("error curves and fitted orders") {
  const auto s = registry_get("43-1");
  const auto curve = error_curve(s, make_problem(ProblemId::p1), halvings(20, 5));
  REQUIRE(curve.points.size() == 5);
  for (std::size_t i = 1; i < curve.points.size(); ++i) CHECK(curve.points[i].d < curve.points[i - 1].d);
  CHECK(convergence_order(curve) > 2.7);
  CHECK(convergence_order(curve) < 3.5);
  const auto a = error_curve(s, make_problem(ProblemId::p1), halvings(20, 3), StepForm::a_form);
  const auto l = error_curve(s, make_problem(ProblemId::p1), halvings(20, 3), StepForm::lowstorage);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.points[i].d == doctest::Approx(l.points[i].d).epsilon(1e-6));
  const auto lin = error_curve(s, make_problem(ProblemId::linear), halvings(10, 4));
  CHECK(convergence_order(lin) > 3.7);
}

TEST_CASE("error curve argument checks") {
  const auto s = registry_get("43-1");
  const auto p = make_problem(ProblemId::p1);
  CHECK_THROWS_AS(error_curve(s, p, {Rational(3, 7)}), std::invalid_argument);
  CHECK_THROWS_AS(error_curve(s, p, {Rational(1, 20), Rational(1, 10)}), std::invalid_argument);
  CHECK_THROWS_AS(error_curve(s, p, {Rational(-1, 20)}), std::invalid_argument);
  CHECK_THROWS_AS(error_curve(registry_get("rk4-classic"), p, {Rational(1)}, StepForm::lowstorage), NotTwoNStorageError);
  ErrorCurve two;
  two.points = {{0.1, 1e-3}, {0.05, 1e-4}};
  CHECK_THROWS_AS(convergence_order(two), EstimationError);
}

TEST_CASE("csv output") {
  ErrorCurve c;
  c.points = {{0.05, 1.5e-6}, {0.025, 2e-7}};
  CHECK(error_curve_csv(c) == "h,d\n0.05,1.5e-06\n0.025,2e-07\n");
}

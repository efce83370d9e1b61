#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "lsrk/errors.hpp"
#include "lsrk/rational.hpp"
#include "lsrk/scheme.hpp"
#include "lsrk/tableau.hpp"

namespace lsrk {

/// One step of the standard form with stored stage derivatives:
///   k_i = f(t + c_i h, y + h sum_j a_ij k_j),  y_next = y + h sum_i b_i k_i.
/// State needs State + State and Scalar * State.
template <class Scalar, class State, class Rhs>
State step_a_form(const ButcherTableau<Scalar>& t, Rhs&& f, const Scalar& t_now, const State& y, const Scalar& h) {
  const int s = t.stages();
  std::vector<State> k;
  k.reserve(static_cast<std::size_t>(s));
  for (int i = 1; i <= s; ++i) {
    State yi = y;
    for (int j = 1; j < i; ++j) yi = yi + (h * t.a(i, j)) * k[static_cast<std::size_t>(j - 1)];
    k.push_back(f(t_now + t.c(i) * h, yi));
  }
  State out = y;
  for (int i = 1; i <= s; ++i) out = out + (h * t.b(i)) * k[static_cast<std::size_t>(i - 1)];
  return out;
}

/// The two storage registers of the low-storage form.
template <class State>
struct LowStorageRegisters {
  static constexpr int kRegisterCount = 2;
  State y;
  State dy;
};

/// One step of the two-register form:
///   dy_i = A_i dy_{i-1} + h f(t + c_i h, y_{i-1}),  y_i = y_{i-1} + B_i dy_i.
template <class Scalar, class State, class Rhs>
State step_lowstorage(const LowStorageForm<Scalar>& form, Rhs&& f, const Scalar& t_now, const State& y,
                      const Scalar& h) {
  static_assert(LowStorageRegisters<State>::kRegisterCount == 2);
  static_assert(sizeof(LowStorageRegisters<State>) == 2 * sizeof(State), "only y and dy may be stored");
  LowStorageRegisters<State> r{y, y};
  for (int i = 1; i <= form.stages(); ++i) {
    r.dy = form.A(i) * r.dy + h * f(t_now + form.c(i) * h, r.y);
    r.y = r.y + form.B(i) * r.dy;
  }
  return r.y;
}

enum class ProblemId { p1, p2, p3, linear };

/// Scalar test equation y' = f(t, y) with a closed-form solution.
struct TestProblem {
  ProblemId id = ProblemId::p1;
  double lambda = -1.0;  // linear only
  Rational t0{0};
  Rational t_end{20};
  double y0 = 1.0;

  std::string name() const;
  /// Throws StepError outside the domain of the right-hand side.
  double rhs(double t, double y) const;
  double exact(double t) const;
};

/// p1: y' = y cos t, y = exp(sin t);  p2: y' = 4 y sin^3 t cos t, y = exp(sin^4 t);
/// p3: y' = -y^(3/2) / 2, y = (1 + t/4)^-2; all on [0, 20].
/// linear: y' = lambda y, y = exp(lambda t) on [0, 1].
TestProblem make_problem(ProblemId id, double lambda = -1.0);
ProblemId parse_problem(const std::string& text);

enum class StepForm { a_form, lowstorage };

/// y(t_end) from `steps` equal steps in double precision.
double integrate(const ButcherTableau<double>& t, const TestProblem& p, long steps);
double integrate(const LowStorageForm<double>& f, const TestProblem& p, long steps);

struct ErrorPoint {
  double h;
  double d;
};

struct ErrorCurve {
  std::string scheme;
  std::string problem;
  std::vector<ErrorPoint> points;
};

/// d(h) = |y_h(t_end) - y(t_end)| for each h. Every h must divide the
/// interval into a whole number of steps, and the list must be strictly
/// decreasing. The A-form is used when the scheme has one.
ErrorCurve error_curve(const Scheme& scheme, const TestProblem& p, const std::vector<Rational>& h_list);
ErrorCurve error_curve(const Scheme& scheme, const TestProblem& p, const std::vector<Rational>& h_list, StepForm form);

/// Errors at or below this level are treated as roundoff and not fitted.
inline constexpr double kRoundoffFloor = 1e3 * 2.220446049250313e-16;

/// Least-squares slope of log d against log h. Points with d below the
/// roundoff floor are dropped; fewer than three survivors is an EstimationError.
double convergence_order(const ErrorCurve& curve);

/// "h,d" header then one row per point, 17 significant digits.
std::string error_curve_csv(const ErrorCurve& curve);

}  // namespace lsrk

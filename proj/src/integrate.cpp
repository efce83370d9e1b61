#include "lsrk/integrate.hpp"

#include <charconv>
#include <sstream>

namespace lsrk {

std::string TestProblem::name() const {
  switch (id) {
    case ProblemId::p1: return "p1";
    case ProblemId::p2: return "p2";
    case ProblemId::p3: return "p3";
    case ProblemId::linear: return "linear(" + to_text(lambda) + ")";
  }
  return "?";
}

double TestProblem::rhs(double t, double y) const {
  if (!std::isfinite(y)) throw StepError(name() + ": non-finite state at t = " + to_text(t));
  switch (id) {
    case ProblemId::p1: return y * std::cos(t);
    case ProblemId::p2: {
      const double s = std::sin(t);
      return 4.0 * y * s * s * s * std::cos(t);
    }
    case ProblemId::p3:
      if (y < 0) throw StepError("p3: y = " + to_text(y) + " < 0 at t = " + to_text(t) + "; step too large");
      return -0.5 * y * std::sqrt(y);
    case ProblemId::linear: return lambda * y;
  }
  return 0.0;
}

double TestProblem::exact(double t) const {
  switch (id) {
    case ProblemId::p1: return std::exp(std::sin(t));
    case ProblemId::p2: return std::exp(std::pow(std::sin(t), 4));
    case ProblemId::p3: {
      const double u = 1.0 + 0.25 * t;
      return 1.0 / (u * u);
    }
    case ProblemId::linear: return std::exp(lambda * t);
  }
  return 0.0;
}

TestProblem make_problem(ProblemId id, double lambda) {
  TestProblem p;
  p.id = id;
  p.lambda = lambda;
  if (id == ProblemId::linear) p.t_end = 1;
  return p;
}

ProblemId parse_problem(const std::string& text) {
  if (text == "1" || text == "p1") return ProblemId::p1;
  if (text == "2" || text == "p2") return ProblemId::p2;
  if (text == "3" || text == "p3") return ProblemId::p3;
  if (text == "linear") return ProblemId::linear;
  throw std::invalid_argument("unknown problem '" + text + "' (expected 1, 2, 3 or linear)");
}

namespace {

template <class Step>
double march(const TestProblem& p, long steps, Step&& step) {
  const double t0 = p.t0.to_double();
  const double h = ((p.t_end - p.t0) / Rational(steps)).to_double();
  auto f = [&p](double t, double y) { return p.rhs(t, y); };
  double y = p.y0;
  for (long n = 0; n < steps; ++n) y = step(f, t0 + static_cast<double>(n) * h, y, h);
  return y;
}

}  // namespace

double integrate(const ButcherTableau<double>& t, const TestProblem& p, long steps) {
  return march(p, steps, [&t](auto& f, double tn, double y, double h) { return step_a_form(t, f, tn, y, h); });
}

double integrate(const LowStorageForm<double>& form, const TestProblem& p, long steps) {
  return march(p, steps,
               [&form](auto& f, double tn, double y, double h) { return step_lowstorage(form, f, tn, y, h); });
}

ErrorCurve error_curve(const Scheme& scheme, const TestProblem& p, const std::vector<Rational>& h_list) {
  StepForm form = StepForm::a_form;
  const bool has_lowstorage =
      std::visit([](const auto& f) { return f.lowstorage.has_value(); }, scheme.forms_variant());
  if (has_lowstorage) form = StepForm::lowstorage;
  return error_curve(scheme, p, h_list, form);
}

ErrorCurve error_curve(const Scheme& scheme, const TestProblem& p, const std::vector<Rational>& h_list,
                       StepForm form) {
  const Rational span = p.t_end - p.t0;
  std::vector<long> steps;
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    const Rational& h = h_list[i];
    if (h.sign() <= 0) throw std::invalid_argument("step size " + h.to_string() + " must be positive");
    if (i > 0 && !(h < h_list[i - 1])) throw std::invalid_argument("step sizes must be strictly decreasing");
    const Rational n = span / h;
    if (!n.is_integer()) {
      throw std::invalid_argument("h = " + h.to_string() + " does not divide [" + p.t0.to_string() + ", " +
                                  p.t_end.to_string() + "] into a whole number of steps");
    }
    steps.push_back(n.numerator().get_si());
  }
  ErrorCurve curve{scheme.name(), p.name(), {}};
  const double exact = p.exact(p.t_end.to_double());
  if (form == StepForm::lowstorage) {
    const auto f = double_lowstorage(scheme);
    for (std::size_t i = 0; i < steps.size(); ++i)
      curve.points.push_back({h_list[i].to_double(), std::abs(integrate(f, p, steps[i]) - exact)});
  } else {
    const auto t = double_tableau(scheme);
    for (std::size_t i = 0; i < steps.size(); ++i)
      curve.points.push_back({h_list[i].to_double(), std::abs(integrate(t, p, steps[i]) - exact)});
  }
  return curve;
}

double convergence_order(const ErrorCurve& curve) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& pt : curve.points) {
    if (pt.d > kRoundoffFloor && pt.h > 0) pts.emplace_back(std::log(pt.h), std::log(pt.d));
  }
  if (pts.size() < 3) {
    throw EstimationError("only " + std::to_string(pts.size()) +
                          " points above the roundoff floor; at least 3 are needed to fit an order");
  }
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

std::string error_curve_csv(const ErrorCurve& curve) {
  std::ostringstream out;
  out << "h,d\n";
  // Shortest text that reads back to the same double.
  const auto put = [&out](double x) {
    char buf[32];
    out.write(buf, std::to_chars(buf, buf + sizeof buf, x).ptr - buf);
  };
  for (const auto& pt : curve.points) {
    put(pt.h);
    out << ',';
    put(pt.d);
    out << '\n';
  }
  return out.str();
}

}  // namespace lsrk

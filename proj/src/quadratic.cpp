#include "lsrk/quadratic.hpp"

namespace lsrk {

std::string to_string(RootKind kind) {
  switch (kind) {
    case RootKind::two_rational: return "two-rational";
    case RootKind::one_rational: return "one-rational";
    case RootKind::two_real_irrational: return "two-real-irrational";
    case RootKind::complex_pair: return "complex-pair";
    case RootKind::degenerate_linear: return "degenerate-linear";
    case RootKind::degenerate_constant: return "degenerate-constant";
  }
  return "unknown";
}

QuadraticRoots solve_quadratic(const Rational& a2, const Rational& a1, const Rational& a0, int bits) {
  QuadraticRoots out;
  if (a2.is_zero()) {
    if (a1.is_zero()) {
      out.kind = RootKind::degenerate_constant;
      out.constant_is_zero = a0.is_zero();
      return out;
    }
    out.kind = RootKind::degenerate_linear;
    out.exact.push_back(-a0 / a1);
    return out;
  }

  const Rational disc = a1 * a1 - Rational(4) * a2 * a0;
  if (disc.sign() < 0) {
    out.kind = RootKind::complex_pair;
    return out;
  }
  const Rational two_a2 = Rational(2) * a2;
  if (disc.is_zero()) {
    out.kind = RootKind::one_rational;
    out.exact.push_back(-a1 / two_a2);
    return out;
  }
  if (auto root = rational_sqrt(disc)) {
    out.kind = RootKind::two_rational;
    Rational r1 = (-a1 - *root) / two_a2;
    Rational r2 = (-a1 + *root) / two_a2;
    if (r2 < r1) std::swap(r1, r2);
    out.exact = {r1, r2};
    return out;
  }

  out.kind = RootKind::two_real_irrational;
  // Pick the cancellation-free branch first, then use r1 r2 = a0 / a2.
  const ExtFloat sq = sqrt(ExtFloat(disc, bits));
  const ExtFloat b(a1, bits);
  const ExtFloat q = b.sign() >= 0 ? -(b + sq) / ExtFloat(2.0, bits) : (sq - b) / ExtFloat(2.0, bits);
  ExtFloat r1 = q / ExtFloat(a2, bits);
  ExtFloat r2 = ExtFloat(a0, bits) / q;
  if (r2 < r1) std::swap(r1, r2);
  out.approx = {r1, r2};
  return out;
}

}  // namespace lsrk

#pragma once

#include <string>
#include <vector>

#include "lsrk/ext_float.hpp"
#include "lsrk/rational.hpp"

namespace lsrk {

enum class RootKind {
  two_rational,
  one_rational,  // double root
  two_real_irrational,
  complex_pair,
  degenerate_linear,
  degenerate_constant,
};

std::string to_string(RootKind kind);

/// Real solutions of a2 x^2 + a1 x + a0 = 0 with rational coefficients.
/// Rational roots land in `exact`, irrational real roots in `approx`; both
/// are sorted ascending. A complex pair or a constant equation has no roots
/// listed (for a constant equation `constant_is_zero` tells whether every x
/// solves it).
struct QuadraticRoots {
  RootKind kind = RootKind::degenerate_constant;
  std::vector<Rational> exact;
  std::vector<ExtFloat> approx;
  bool constant_is_zero = false;

  std::size_t real_root_count() const { return exact.size() + approx.size(); }
};

QuadraticRoots solve_quadratic(const Rational& a2, const Rational& a1, const Rational& a0,
                               int bits = ExtFloat::kQuadraticBits);

}  // namespace lsrk

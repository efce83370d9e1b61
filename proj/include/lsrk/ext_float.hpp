#pragma once

#include <mpfr.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "lsrk/rational.hpp"

namespace lsrk {

/// Binary floating-point number with a per-value significand width.
/// Arithmetic between two values is carried out, and rounded, at the larger
/// of the two precisions.
class ExtFloat {
 public:
  static constexpr int kMinBits = 64;
  static constexpr int kQuadraticBits = 128;
  static constexpr int kRefineBits = 256;

  ExtFloat();
  ExtFloat(double v, int bits);
  ExtFloat(const Rational& q, int bits);
  ExtFloat(const ExtFloat& o);
  ExtFloat(ExtFloat&& o) noexcept;
  ExtFloat& operator=(const ExtFloat& o);
  ExtFloat& operator=(ExtFloat&& o) noexcept;
  ~ExtFloat();

  /// Parses decimal text ("1.5e-3", "-2", "0.27"). A "p/q" fraction is also
  /// accepted and rounded once.
  static ExtFloat parse(std::string_view text, int bits);
  static ExtFloat zero(int bits) { return ExtFloat(0.0, bits); }

  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
  /// Value rounded to a new precision.
  ExtFloat with_precision(int bits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// floor(log2 |x|) + 1, or a large negative number for zero.
  long exponent2() const;

  /// Shortest decimal scientific text that parses back to this exact value at
  /// this precision, e.g. "3.291860514560574016139360757085052620500596e-02".
  std::string to_string() const;
  /// Scientific text with a fixed number of significant digits.
  std::string to_string(int significant_digits) const;

  ExtFloat operator-() const;
  ExtFloat& operator+=(const ExtFloat& o);
  ExtFloat& operator-=(const ExtFloat& o);
  ExtFloat& operator*=(const ExtFloat& o);
  ExtFloat& operator/=(const ExtFloat& o);

  friend ExtFloat operator+(const ExtFloat& a, const ExtFloat& b);
  friend ExtFloat operator-(const ExtFloat& a, const ExtFloat& b);
  friend ExtFloat operator*(const ExtFloat& a, const ExtFloat& b);
  friend ExtFloat operator/(const ExtFloat& a, const ExtFloat& b);

  friend bool operator==(const ExtFloat& a, const ExtFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const ExtFloat& a, const ExtFloat& b);

  friend ExtFloat sqrt(const ExtFloat& x);
  friend ExtFloat abs(const ExtFloat& x);
  /// x * 2^e, exact.
  friend ExtFloat ldexp(const ExtFloat& x, long e);

  friend std::ostream& operator<<(std::ostream& os, const ExtFloat& x) { return os << x.to_string(); }

  mpfr_srcptr get_mpfr() const { return v_; }

 private:
  explicit ExtFloat(int bits, int /*tag*/);
  mpfr_t v_;
};

inline bool is_zero(const ExtFloat& x) { return x.is_zero(); }
inline ExtFloat lift(const Rational& q, const ExtFloat& like) { return ExtFloat(q, like.precision()); }
/// Relative agreement to half the working precision.
bool nearly_equal(const ExtFloat& a, const ExtFloat& b);
inline std::string to_text(const ExtFloat& x) { return x.to_string(); }

inline bool is_zero(double x) { return x == 0.0; }
inline double lift(const Rational& q, double /*like*/) { return q.to_double(); }
bool nearly_equal(double a, double b);
std::string to_text(double x);

}  // namespace lsrk

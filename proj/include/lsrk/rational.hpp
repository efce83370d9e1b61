#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace lsrk {

/// Exact fraction with unbounded integer parts. Always canonical: the
/// denominator is positive and coprime to the numerator.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I n) : value_(static_cast<long>(n)) {}  // NOLINT(implicit)
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class q);

  /// Accepts "p/q" or "p" with optional sign; surrounding whitespace allowed.
  static Rational parse(std::string_view text);

  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& get_mpq() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return denominator() == 1; }
  // Correctly rounded; mpq get_d truncates.
  double to_double() const;
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int r = cmp(a.value_, b.value_);
    return r < 0 ? std::strong_ordering::less
                 : (r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

 private:
  mpq_class value_;
};

Rational abs(const Rational& q);

/// Integer power, n >= 0.
Rational pow(const Rational& q, unsigned n);

/// Exact square root when numerator and denominator are both perfect
/// squares, otherwise nullopt. Throws std::domain_error for negative input.
std::optional<Rational> rational_sqrt(const Rational& x);

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline Rational lift(const Rational& q, const Rational& /*like*/) { return q; }
inline bool nearly_equal(const Rational& a, const Rational& b) { return a == b; }
inline std::string to_text(const Rational& q) { return q.to_string(); }

}  // namespace lsrk

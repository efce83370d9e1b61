#include "lsrk/ext_float.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace lsrk {

namespace {

void check_bits(int bits) {
  if (bits < ExtFloat::kMinBits) {
    throw std::invalid_argument("ExtFloat precision must be at least " + std::to_string(ExtFloat::kMinBits) +
                                " bits, got " + std::to_string(bits));
  }
}

struct MpfrString {
  char* p;
  ~MpfrString() { mpfr_free_str(p); }
};

// Digits and decimal exponent with value = 0.d1d2d3... * 10^exp.
std::string scientific(const std::string& raw, mpfr_exp_t exp) {
  std::string digits = raw;
  std::string sign;
  if (!digits.empty() && digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = sign;
  out += digits.front();
  if (digits.size() > 1) {
    out += '.';
    out.append(digits, 1, std::string::npos);
  }
  const long e = static_cast<long>(exp) - 1;
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
  return out + buf;
}

}  // namespace

ExtFloat::ExtFloat(int bits, int) {
  check_bits(bits);
  mpfr_init2(v_, bits);
}

ExtFloat::ExtFloat() : ExtFloat(kMinBits, 0) { mpfr_set_zero(v_, 1); }

ExtFloat::ExtFloat(double v, int bits) : ExtFloat(bits, 0) { mpfr_set_d(v_, v, MPFR_RNDN); }

ExtFloat::ExtFloat(const Rational& q, int bits) : ExtFloat(bits, 0) {
  mpfr_set_q(v_, q.get_mpq().get_mpq_t(), MPFR_RNDN);
}

ExtFloat::ExtFloat(const ExtFloat& o) : ExtFloat(o.precision(), 0) { mpfr_set(v_, o.v_, MPFR_RNDN); }

ExtFloat::ExtFloat(ExtFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

ExtFloat& ExtFloat::operator=(const ExtFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

ExtFloat& ExtFloat::operator=(ExtFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

ExtFloat::~ExtFloat() { mpfr_clear(v_); }

ExtFloat ExtFloat::parse(std::string_view text, int bits) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  if (s.find('/') != std::string::npos) return ExtFloat(Rational::parse(s), bits);
  ExtFloat r(bits, 0);
  if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
  }
  return r;
}

ExtFloat ExtFloat::with_precision(int bits) const {
  ExtFloat r(bits, 0);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long ExtFloat::exponent2() const {
  if (is_zero()) return -1000000000L;
  return static_cast<long>(mpfr_get_exp(v_));
}

std::string ExtFloat::to_string() const {
  if (is_zero()) return "0";
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  // Every extra digit only moves the printed value closer, so the first
  // length that round-trips is the shortest.
  const auto max_digits = static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(v_)));
  ExtFloat back(precision(), 0);
  for (int n = 1; n <= max_digits; ++n) {
    mpfr_exp_t exp = 0;
    MpfrString s{mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(n), v_, MPFR_RNDN)};
    std::string raw(s.p);
    const std::string text = scientific(raw, exp);
    mpfr_set_str(back.v_, text.c_str(), 10, MPFR_RNDN);
    if (mpfr_equal_p(back.v_, v_)) return text;
  }
  return to_string(max_digits);
}

std::string ExtFloat::to_string(int significant_digits) const {
  if (is_zero()) return "0";
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  mpfr_exp_t exp = 0;
  MpfrString s{mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(std::max(1, significant_digits)), v_,
                            MPFR_RNDN)};
  // Keep trailing zeros: the caller asked for a fixed digit count.
  std::string raw(s.p);
  std::string sign;
  if (raw.front() == '-') {
    sign = "-";
    raw.erase(0, 1);
  }
  std::string out = sign + raw.substr(0, 1);
  if (raw.size() > 1) out += "." + raw.substr(1);
  const long e = static_cast<long>(exp) - 1;
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
  return out + buf;
}

ExtFloat ExtFloat::operator-() const {
  ExtFloat r(precision(), 0);
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

#define LSRK_EXT_BINARY(OP, FN)                                         \
  ExtFloat operator OP(const ExtFloat& a, const ExtFloat& b) {          \
    ExtFloat r(std::max(a.precision(), b.precision()), 0);              \
    FN(r.v_, a.v_, b.v_, MPFR_RNDN);                                    \
    return r;                                                           \
  }                                                                     \
  ExtFloat& ExtFloat::operator OP##=(const ExtFloat& o) {               \
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN); \
    FN(v_, v_, o.v_, MPFR_RNDN);                                        \
    return *this;                                                       \
  }

LSRK_EXT_BINARY(+, mpfr_add)
LSRK_EXT_BINARY(-, mpfr_sub)
LSRK_EXT_BINARY(*, mpfr_mul)
LSRK_EXT_BINARY(/, mpfr_div)

#undef LSRK_EXT_BINARY

std::partial_ordering operator<=>(const ExtFloat& a, const ExtFloat& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

ExtFloat sqrt(const ExtFloat& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt of negative ExtFloat");
  ExtFloat r(x.precision(), 0);
  mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
  return r;
}

ExtFloat abs(const ExtFloat& x) {
  ExtFloat r(x.precision(), 0);
  mpfr_abs(r.v_, x.v_, MPFR_RNDN);
  return r;
}

ExtFloat ldexp(const ExtFloat& x, long e) {
  ExtFloat r(x.precision(), 0);
  mpfr_mul_2si(r.v_, x.v_, e, MPFR_RNDN);
  return r;
}

bool nearly_equal(const ExtFloat& a, const ExtFloat& b) {
  const int bits = std::max(a.precision(), b.precision());
  ExtFloat scale = std::max(abs(a), abs(b));
  const ExtFloat one(1.0, bits);
  if (scale < one) scale = one;
  return abs(a - b) <= ldexp(scale, -bits / 2);
}

bool nearly_equal(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-12 * scale;
}

std::string to_text(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace lsrk

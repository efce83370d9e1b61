#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsrk/convert.hpp"
#include "lsrk/tableau.hpp"

namespace lsrk {

template <class T>
struct Residual {
  std::string id;
  T value;
};

template <class T>
struct ResidualReport {
  std::vector<Residual<T>> entries;
  T max_abs;

  bool all_zero() const {
    for (const auto& e : entries)
      if (!is_zero(e.value)) return false;
    return true;
  }
};

/// Zero for exact types; for floating types, small relative to the precision.
inline bool negligible(const Rational& x) { return x.is_zero(); }
inline bool negligible(const ExtFloat& x) { return abs(x) <= ldexp(ExtFloat(1.0, x.precision()), -x.precision() / 2); }
inline bool negligible(double x) { return std::abs(x) <= 1e-12; }

namespace detail {

template <class T>
ResidualReport<T> make_report(std::vector<Residual<T>> entries, const T& zero) {
  using std::abs;
  T max = zero;
  for (const auto& e : entries) {
    T m = abs(e.value);
    if (m > max) max = m;
  }
  return ResidualReport<T>{std::move(entries), max};
}

}  // namespace detail

/// Standard order conditions through order p (1..4), each as LHS - RHS:
///   order1:b     sum b_i = 1
///   order2:bc    sum b_i c_i = 1/2
///   order3:bc2   sum b_i c_i^2 = 1/3
///   order3:bac   sum b_i a_ij c_j = 1/6
///   order4:bc3   sum b_i c_i^3 = 1/4
///   order4:bcac  sum b_i c_i a_ij c_j = 1/8
///   order4:bac2  sum b_i a_ij c_j^2 = 1/12
///   order4:baac  sum b_i a_ij a_jk c_k = 1/24
template <class T>
ResidualReport<T> order_residuals(const ButcherTableau<T>& t, int p) {
  if (p < 1 || p > 4) throw std::invalid_argument("order must be in 1..4, got " + std::to_string(p));
  const int s = t.stages();
  const T zero = t.zero();
  auto r = [&](long num, long den) { return lift(Rational(num, den), zero); };

  // ac[i] = sum_j a_ij c_j, ac2[i] = sum_j a_ij c_j^2, aac[i] = sum_j a_ij ac[j]
  std::vector<T> ac(static_cast<std::size_t>(s + 1), zero), ac2 = ac, aac = ac;
  for (int i = 1; i <= s; ++i) {
    for (int j = 1; j < i; ++j) {
      const T aij = t.a(i, j);
      ac[static_cast<std::size_t>(i)] += aij * t.c(j);
      ac2[static_cast<std::size_t>(i)] += aij * t.c(j) * t.c(j);
    }
  }
  for (int i = 1; i <= s; ++i)
    for (int j = 1; j < i; ++j) aac[static_cast<std::size_t>(i)] += t.a(i, j) * ac[static_cast<std::size_t>(j)];

  T b = zero, bc = zero, bc2 = zero, bac = zero, bc3 = zero, bcac = zero, bac2 = zero, baac = zero;
  for (int i = 1; i <= s; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const T& bi = t.b(i);
    const T ci = t.c(i);
    b += bi;
    bc += bi * ci;
    bc2 += bi * ci * ci;
    bac += bi * ac[ui];
    bc3 += bi * ci * ci * ci;
    bcac += bi * ci * ac[ui];
    bac2 += bi * ac2[ui];
    baac += bi * aac[ui];
  }
  std::vector<Residual<T>> out;
  out.push_back({"order1:b", b - r(1, 1)});
  if (p >= 2) out.push_back({"order2:bc", bc - r(1, 2)});
  if (p >= 3) {
    out.push_back({"order3:bc2", bc2 - r(1, 3)});
    out.push_back({"order3:bac", bac - r(1, 6)});
  }
  if (p >= 4) {
    out.push_back({"order4:bc3", bc3 - r(1, 4)});
    out.push_back({"order4:bcac", bcac - r(1, 8)});
    out.push_back({"order4:bac2", bac2 - r(1, 12)});
    out.push_back({"order4:baac", baac - r(1, 24)});
  }
  return detail::make_report(std::move(out), zero);
}

/// The (s-1)(s-2)/2 quadratic constraints for a two-register method:
///   a_ij (b_{j-1} - a_{j,j-1}) - (a_{i,j-1} - a_{j,j-1}) b_j,  i = 3..s, j = 2..i-1,
/// with ids "2n:i<i>j<j>".
template <class T>
ResidualReport<T> two_n_residuals(const ButcherTableau<T>& t) {
  const int s = t.stages();
  std::vector<Residual<T>> out;
  for (int i = 3; i <= s; ++i) {
    for (int j = 2; j < i; ++j) {
      const T lhs = t.a(i, j) * (t.b(j - 1) - t.a(j, j - 1));
      const T rhs = (t.a(i, j - 1) - t.a(j, j - 1)) * t.b(j);
      out.push_back({"2n:i" + std::to_string(i) + "j" + std::to_string(j), lhs - rhs});
    }
  }
  return detail::make_report(std::move(out), t.zero());
}

template <class T>
struct TwoNCheck {
  bool ok = false;
  std::optional<LowStorageForm<T>> form;
  std::string reason;
};

/// True iff the constraints above vanish, every alpha_ij and beta_i is
/// nonzero, and alpha_ij / alpha_{i,j+1} = beta_j / beta_{j+1} for all rows.
template <class T>
TwoNCheck<T> is_two_n_storage(const ButcherTableau<T>& t) {
  TwoNCheck<T> out;
  for (const auto& e : two_n_residuals(t).entries) {
    if (!negligible(e.value)) {
      out.reason = "constraint " + e.id + " has residual " + to_text(e.value);
      return out;
    }
  }
  const auto f = a_to_alpha(t);
  const int s = t.stages();
  for (int i = 1; i <= s + 1; ++i) {
    for (int j = 1; j < i && j <= s; ++j) {
      if (negligible(f.alpha(i, j))) {
        out.reason = i == s + 1 ? "beta_" + std::to_string(j) + " vanishes"
                                : "alpha_" + std::to_string(i) + std::to_string(j) + " vanishes";
        return out;
      }
    }
  }
  for (int j = 1; j < s; ++j) {
    const T target = f.beta(j) / f.beta(j + 1);
    for (int i = j + 2; i <= s; ++i) {
      if (!nearly_equal(f.alpha(i, j) / f.alpha(i, j + 1), target)) {
        out.reason = "alpha ratio of row " + std::to_string(i) + ", columns " + std::to_string(j) + "/" +
                     std::to_string(j + 1) + " differs from beta_" + std::to_string(j) + "/beta_" +
                     std::to_string(j + 1);
        return out;
      }
    }
  }
  try {
    out.form = a_to_lowstorage(t);
  } catch (const NotTwoNStorageError& e) {
    out.reason = e.what();
    return out;
  }
  out.ok = true;
  return out;
}

/// gamma_k = b^T a^(k-1) 1, k = 1..s: the coefficients of the stability
/// polynomial R(z) = 1 + sum_k gamma_k z^k.
template <class T>
std::vector<T> linear_coeffs(const ButcherTableau<T>& t) {
  const int s = t.stages();
  const T zero = t.zero();
  std::vector<T> v(static_cast<std::size_t>(s), lift(Rational(1), zero));
  std::vector<T> gamma;
  for (int k = 1; k <= s; ++k) {
    T g = zero;
    for (int i = 1; i <= s; ++i) g += t.b(i) * v[static_cast<std::size_t>(i - 1)];
    gamma.push_back(std::move(g));
    std::vector<T> next(static_cast<std::size_t>(s), zero);
    for (int i = 1; i <= s; ++i)
      for (int j = 1; j < i; ++j) next[static_cast<std::size_t>(i - 1)] += t.a(i, j) * v[static_cast<std::size_t>(j - 1)];
    v = std::move(next);
  }
  return gamma;
}

}  // namespace lsrk

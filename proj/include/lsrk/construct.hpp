#pragma once

#include <string>
#include <vector>

#include "lsrk/errors.hpp"
#include "lsrk/quadratic.hpp"
#include "lsrk/scheme.hpp"
#include "lsrk/tableau.hpp"

namespace lsrk {

namespace detail {

template <class T>
void check_bc(const std::vector<T>& b, const std::vector<T>& c) {
  if (b.empty()) throw ValidationError("b", "a method needs at least one stage");
  if (b.size() != c.size()) throw ValidationError("c", "b and c must have the same length");
  if (!is_zero(c.front())) throw ValidationError("c[1]", "explicit method requires c_1 = 0");
}

// S_j = b_1 + ... + b_j for j = 0..s.
template <class T>
std::vector<T> partial_sums(const std::vector<T>& b) {
  std::vector<T> S{lift(Rational(0), b.front())};
  for (const auto& x : b) S.push_back(S.back() + x);
  return S;
}

}  // namespace detail

/// Tableau of the 2N-storage method with weights b and nodes c:
///   a_ij = b_j / (S_j - c_j) * (c_i - c_j - sum_{k=j+1}^{i-1} a_ik),  S_j = b_1 + ... + b_j.
/// Also evaluated by the closed (non-recursive) product formula; the two must
/// agree. A vanishing S_j - c_j raises SpecialCaseError.
template <class T>
ButcherTableau<T> derive_a_from_bc(const std::vector<T>& b, const std::vector<T>& c) {
  detail::check_bc(b, c);
  const int s = static_cast<int>(b.size());
  const auto S = detail::partial_sums(b);
  auto Sj = [&](int j) -> const T& { return S[static_cast<std::size_t>(j)]; };
  auto cj = [&](int j) -> const T& { return c[static_cast<std::size_t>(j - 1)]; };
  auto bj = [&](int j) -> const T& { return b[static_cast<std::size_t>(j - 1)]; };
  for (int j = 1; j < s; ++j) {
    if (is_zero(Sj(j) - cj(j))) {
      throw SpecialCaseError("S_" + std::to_string(j) + " = c_" + std::to_string(j),
                             "b_1 + ... + b_" + std::to_string(j) + " equals c_" + std::to_string(j) +
                                 "; a_ij for column j = " + std::to_string(j) + " is not determined by b and c");
    }
  }
  TriangularRows<T> rows;
  for (int i = 2; i <= s; ++i) {
    std::vector<T> row(static_cast<std::size_t>(i - 1), c.front());
    for (int j = i - 1; j >= 1; --j) {
      T rest = cj(i) - cj(j);
      for (int k = j + 1; k < i; ++k) rest -= row[static_cast<std::size_t>(k - 1)];
      row[static_cast<std::size_t>(j - 1)] = bj(j) / (Sj(j) - cj(j)) * rest;
    }
    for (int j = 1; j < i; ++j) {
      // sum_{k=1}^{i-j} prod_{l=1}^{k-1} (S_{j+l-1} - c_{j+l}) / prod_{m=0}^{k-1} (S_{j+m} - c_{j+m}) * (c_{j+k} - c_{j+k-1})
      T sum = c.front();
      T num = lift(Rational(1), c.front());
      T den = num;
      for (int k = 1; k <= i - j; ++k) {
        if (k > 1) num = num * (Sj(j + k - 2) - cj(j + k - 1));
        den = den * (Sj(j + k - 1) - cj(j + k - 1));
        sum += num / den * (cj(j + k) - cj(j + k - 1));
      }
      const T direct = bj(j) * sum;
      if (!nearly_equal(direct, row[static_cast<std::size_t>(j - 1)])) {
        throw InternalConsistencyError("recursive and direct b,c->a formulas disagree at a" + detail::idx(i, j) +
                                       ": " + to_text(row[static_cast<std::size_t>(j - 1)]) + " vs " +
                                       to_text(direct));
      }
    }
    rows.push_back(std::move(row));
  }
  return ButcherTableau<T>(c, std::move(rows), b);
}

/// A-form straight from b and c (b_0 = 0, c_{s+1} = 1):
///   A_i = b_{i-1}/b_i * (S_{i-1} - c_i) / (S_{i-1} - c_{i-1}),
///   B_i = b_i (c_{i+1} - c_i) / (S_i - c_i) for i < s, B_s = b_s.
template <class T>
LowStorageForm<T> derive_AB_from_bc(const std::vector<T>& b, const std::vector<T>& c) {
  detail::check_bc(b, c);
  const int s = static_cast<int>(b.size());
  const auto S = detail::partial_sums(b);
  auto Sj = [&](int j) -> const T& { return S[static_cast<std::size_t>(j)]; };
  auto cj = [&](int j) { return j == s + 1 ? lift(Rational(1), c.front()) : c[static_cast<std::size_t>(j - 1)]; };
  auto bj = [&](int j) -> const T& { return b[static_cast<std::size_t>(j - 1)]; };
  std::vector<T> A{c.front()};
  std::vector<T> B;
  for (int i = 1; i <= s; ++i) {
    if (i < s) {
      if (is_zero(Sj(i) - cj(i))) {
        throw SpecialCaseError("S_" + std::to_string(i) + " = c_" + std::to_string(i),
                               "B_" + std::to_string(i) + " has a vanishing denominator");
      }
      B.push_back(bj(i) * (cj(i + 1) - cj(i)) / (Sj(i) - cj(i)));
    } else {
      B.push_back(bj(s));
    }
    if (i >= 2) {
      if (is_zero(bj(i))) {
        throw SpecialCaseError("b_" + std::to_string(i) + " = 0",
                               "A_" + std::to_string(i) + " is not determined by b and c");
      }
      A.push_back(bj(i - 1) / bj(i) * (Sj(i - 1) - cj(i)) / (Sj(i - 1) - cj(i - 1)));
    }
  }
  return LowStorageForm<T>(std::move(A), std::move(B));
}

/// The methods with A_i = -1 for all i > 1: a_ij = b_j + (-1)^(i-j+1) b_i,
/// c_i = sum_j a_ij.
template <class T>
ButcherTableau<T> family_a_minus_one(const std::vector<T>& b) {
  if (b.size() < 2) throw ValidationError("b", "the A = -1 family needs at least two stages");
  const int s = static_cast<int>(b.size());
  TriangularRows<T> rows;
  for (int i = 2; i <= s; ++i) {
    std::vector<T> row;
    for (int j = 1; j < i; ++j) {
      const T& bi = b[static_cast<std::size_t>(i - 1)];
      const T& bj = b[static_cast<std::size_t>(j - 1)];
      row.push_back((i - j) % 2 == 1 ? bj + bi : bj - bi);
    }
    rows.push_back(std::move(row));
  }
  return ButcherTableau<T>::from_rows(std::move(rows), b);
}

struct SolveResult {
  std::vector<Scheme> schemes;
  QuadraticRoots roots;
  std::vector<std::string> diagnostics;
};

/// All (4,3) 2N-storage methods with nodes (0, c2, c3, c4). Roots are found
/// in x = b2 c2; rational roots give rational schemes, irrational roots give
/// decimal schemes at `bits` precision. Every returned scheme is verified to
/// be third order and 2N-storage. Inputs on the special-case surfaces raise
/// SpecialCaseError.
/// With `include_irrational` false, irrational roots are reported in
/// `roots` but no scheme is built for them.
SolveResult solve_43(const Rational& c2, const Rational& c3, const Rational& c4,
                     int bits = ExtFloat::kQuadraticBits, bool include_irrational = true);

enum class Special43 { b2zero, b3zero, c2eqc3, c3eqc4 };
std::string to_string(Special43 which);
Special43 parse_special43(const std::string& text);

/// The (4,3) special cases. Free parameters:
///   b2zero: (c2, c3)   b3zero: (c2, c4)   c2eqc3: (c2, c4)   c3eqc4: (c2, c3)
Scheme solve_43_special(Special43 which, const Rational& p1, const Rational& p2);

/// All (5,3) 2N-storage methods with nodes (0, c2, c3, c4, c5) and weight b5.
SolveResult solve_53(const Rational& c2, const Rational& c3, const Rational& c4, const Rational& c5,
                     const Rational& b5, int bits = ExtFloat::kQuadraticBits, bool include_irrational = true);

/// The final b2 equation of the (5,3) chain as coefficients (C0, C1, C2, C3)
/// of C0 + C1 b2 + C2 b2^2 + C3 b2^3.
std::vector<Rational> cubic_53(const Rational& c2, const Rational& c3, const Rational& c4, const Rational& c5,
                               const Rational& b5);

}  // namespace lsrk

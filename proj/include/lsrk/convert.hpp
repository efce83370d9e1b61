#pragma once

#include <string>
#include <vector>

#include "lsrk/errors.hpp"
#include "lsrk/tableau.hpp"

namespace lsrk {

/// alpha(i, j) = a(i, j) - a(i-1, j), beta(i) = b(i) - a(s, i).
template <class T>
AlphaForm<T> a_to_alpha(const ButcherTableau<T>& t) {
  const int s = t.stages();
  TriangularRows<T> rows;
  for (int i = 2; i <= s; ++i) {
    std::vector<T> row;
    for (int j = 1; j < i; ++j) row.push_back(t.a(i, j) - t.a(i - 1, j));
    rows.push_back(std::move(row));
  }
  std::vector<T> beta;
  for (int i = 1; i <= s; ++i) beta.push_back(t.b(i) - t.a(s, i));
  return AlphaForm<T>(std::move(rows), std::move(beta), t.c_values());
}

/// Column partial sums: a(i, j) = sum_{k=j+1}^{i} alpha(k, j),
/// b(i) = beta(i) + sum_{k=i+1}^{s} alpha(k, i).
template <class T>
ButcherTableau<T> alpha_to_a(const AlphaForm<T>& f) {
  const int s = f.stages();
  TriangularRows<T> rows;
  for (int i = 2; i <= s; ++i) {
    std::vector<T> row;
    for (int j = 1; j < i; ++j) {
      T sum = f.alpha(j + 1, j);
      for (int k = j + 2; k <= i; ++k) sum += f.alpha(k, j);
      row.push_back(std::move(sum));
    }
    rows.push_back(std::move(row));
  }
  std::vector<T> b;
  for (int i = 1; i <= s; ++i) {
    T sum = f.beta(i);
    for (int k = i + 1; k <= s; ++k) sum += f.alpha(k, i);
    b.push_back(std::move(sum));
  }
  try {
    return ButcherTableau<T>(f.c_values(), std::move(rows), std::move(b));
  } catch (const ValidationError& e) {
    throw InternalConsistencyError(std::string("alpha_to_a produced an inconsistent tableau: ") + e.what());
  }
}

namespace detail {

// Direct product-sum form: a(i, j) = sum_{k=j+1}^{i} B_{k-1} prod_{l=j+1}^{k-1} A_l.
// With i = s+1 this yields b(j).
template <class T>
T product_sum(const LowStorageForm<T>& f, int i, int j) {
  T sum = lift(Rational(0), f.B(1));
  T prod = lift(Rational(1), f.B(1));
  for (int k = j + 1; k <= i; ++k) {
    if (k > j + 1) prod = prod * f.A(k - 1);
    sum += f.B(k - 1) * prod;
  }
  return sum;
}

}  // namespace detail

/// Evaluates the tableau both by the direct product-sum formula and by the
/// recursion a(i, j) = A_{j+1} a(i, j+1) + B_j; the two must agree.
template <class T>
ButcherTableau<T> lowstorage_to_a(const LowStorageForm<T>& f) {
  const int s = f.stages();
  TriangularRows<T> rows;
  for (int i = 2; i <= s + 1; ++i) {
    std::vector<T> recursive(static_cast<std::size_t>(i - 1), f.B(1));
    for (int j = i - 1; j >= 1; --j) {
      auto& slot = recursive[static_cast<std::size_t>(j - 1)];
      slot = (j == i - 1) ? f.B(j) : f.A(j + 1) * recursive[static_cast<std::size_t>(j)] + f.B(j);
      const T direct = detail::product_sum(f, i, j);
      if (!nearly_equal(direct, slot)) {
        throw InternalConsistencyError("direct and recursive A->a evaluations disagree at a" + detail::idx(i, j) +
                                       ": " + to_text(direct) + " vs " + to_text(slot));
      }
    }
    rows.push_back(std::move(recursive));
  }
  std::vector<T> b = std::move(rows.back());
  rows.pop_back();
  return ButcherTableau<T>::from_rows(std::move(rows), std::move(b));
}

/// B_i = a(i+1, i), A_i = (b_{i-1} - a(s, i-1)) / (b_i - a(s, i)); every
/// alternative ratio (a(k, i-1) - a(k-1, i-1)) / (a(k, i) - a(k-1, i)),
/// i < k <= s, must agree, and the result must map back onto `t`.
template <class T>
LowStorageForm<T> a_to_lowstorage(const ButcherTableau<T>& t) {
  const int s = t.stages();
  std::vector<T> A{t.zero()};
  std::vector<T> B;
  for (int i = 1; i <= s; ++i) {
    B.push_back(t.a(i + 1, i));
    if (is_zero(B.back())) {
      throw NotTwoNStorageError(i, "B_" + std::to_string(i) + " = a" + detail::idx(i + 1, i) +
                                       " is zero");
    }
  }
  for (int i = 2; i <= s; ++i) {
    const T num = t.b(i - 1) - t.a(s, i - 1);
    const T den = t.b(i) - t.a(s, i);
    if (is_zero(den)) {
      throw NotTwoNStorageError(i, "b_" + std::to_string(i) + " - a" + detail::idx(s, i) +
                                       " is zero");
    }
    if (is_zero(num)) {
      throw NotTwoNStorageError(i, "A_" + std::to_string(i) + " would vanish (b_" + std::to_string(i - 1) +
                                       " = a" + detail::idx(s, i - 1) + ")");
    }
    T Ai = num / den;
    for (int k = i + 1; k <= s; ++k) {
      const T knum = t.a(k, i - 1) - t.a(k - 1, i - 1);
      const T kden = t.a(k, i) - t.a(k - 1, i);
      if (is_zero(kden) || is_zero(knum) || !nearly_equal(knum / kden, Ai)) {
        throw NotTwoNStorageError(i, "A_" + std::to_string(i) + " cross-check with stage k = " + std::to_string(k) +
                                         " fails");
      }
    }
    A.push_back(std::move(Ai));
  }
  LowStorageForm<T> form(std::move(A), std::move(B));
  const auto back = lowstorage_to_a(form);
  for (int i = 2; i <= s + 1; ++i) {
    for (int j = 1; j < i; ++j) {
      if (!nearly_equal(back.a(i, j), t.a(i, j))) {
        throw NotTwoNStorageError(j, "A-form does not reproduce a" + detail::idx(i, j));
      }
    }
  }
  return form;
}

/// The historical mapping, including its special case for b_i = 0:
///   A_i = (b_{i-1} - B_{i-1}) / b_i            if b_i != 0
///   A_i = (a(i+1, i-1) - c_i) / B_i            if b_i == 0
/// The second branch is wrong in general; it is kept only to reproduce the
/// error. No round-trip check is made.
template <class T>
LowStorageForm<T> legacy_williamson(const ButcherTableau<T>& t) {
  const int s = t.stages();
  std::vector<T> A{t.zero()};
  std::vector<T> B;
  for (int i = 1; i <= s; ++i) B.push_back(t.a(i + 1, i));
  for (int i = 2; i <= s; ++i) {
    const T& Bi = B[static_cast<std::size_t>(i - 1)];
    const T& Bprev = B[static_cast<std::size_t>(i - 2)];
    if (!is_zero(t.b(i))) {
      A.push_back((t.b(i - 1) - Bprev) / t.b(i));
    } else {
      A.push_back((t.a(i + 1, i - 1) - t.c(i)) / Bi);
    }
  }
  return LowStorageForm<T>(std::move(A), std::move(B));
}

}  // namespace lsrk

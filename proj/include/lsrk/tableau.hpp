#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lsrk/errors.hpp"
#include "lsrk/ext_float.hpp"
#include "lsrk/rational.hpp"

namespace lsrk {

// All accessors use 1-based stage indices. Row s+1 of `a` is the weight row
// (a(s+1, j) == b(j)) and c(s+1) == 1, so the final update can be treated
// like any other stage.

/// Rows of a strictly lower-triangular matrix, row i (2..s) holding i-1 entries.
template <class T>
using TriangularRows = std::vector<std::vector<T>>;

namespace detail {

inline std::string idx(int i) { return "[" + std::to_string(i) + "]"; }
inline std::string idx(int i, int j) { return idx(i) + idx(j); }

template <class T>
void check_rows(const TriangularRows<T>& rows, int s, const char* name) {
  if (static_cast<int>(rows.size()) != s - 1) {
    throw ValidationError(name, "expected " + std::to_string(s - 1) + " rows (stages 2.." + std::to_string(s) +
                                    "), got " + std::to_string(rows.size()));
  }
  for (int i = 2; i <= s; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i - 2)];
    if (static_cast<int>(row.size()) != i - 1) {
      throw ValidationError(std::string(name) + idx(i),
                            "row must hold exactly " + std::to_string(i - 1) + " entries (strictly lower "
                            "triangular), got " + std::to_string(row.size()));
    }
  }
}

template <class T>
T row_sum(const std::vector<T>& row, const T& zero) {
  T sum = zero;
  for (const auto& x : row) sum += x;
  return sum;
}

}  // namespace detail

/// Explicit Runge-Kutta method in the standard a-form.
template <class T>
class ButcherTableau {
 public:
  /// Validating constructor: c(1) = 0 and c(i) = sum_j a(i, j).
  ButcherTableau(std::vector<T> c, TriangularRows<T> a_rows, std::vector<T> b)
      : c_(std::move(c)), rows_(std::move(a_rows)), b_(std::move(b)) {
    validate_shape();
    validate_consistency();
  }

  /// Nodes taken as the row sums of `a_rows`.
  static ButcherTableau from_rows(TriangularRows<T> a_rows, std::vector<T> b) {
    if (b.empty()) throw ValidationError("b", "a method needs at least one stage");
    const int s = static_cast<int>(b.size());
    detail::check_rows(a_rows, s, "a");
    const T zero = lift(Rational(0), b.front());
    std::vector<T> c{zero};
    for (const auto& row : a_rows) c.push_back(detail::row_sum(row, zero));
    return unchecked(std::move(c), std::move(a_rows), std::move(b));
  }

  /// Shape-checked only; nodes may disagree with the row sums.
  static ButcherTableau unchecked(std::vector<T> c, TriangularRows<T> a_rows, std::vector<T> b) {
    ButcherTableau t;
    t.c_ = std::move(c);
    t.rows_ = std::move(a_rows);
    t.b_ = std::move(b);
    t.validate_shape();
    return t;
  }

  int stages() const { return static_cast<int>(b_.size()); }

  T a(int i, int j) const {
    if (i == stages() + 1) return b_.at(static_cast<std::size_t>(j - 1));
    if (j >= i || j < 1) return zero();
    return rows_.at(static_cast<std::size_t>(i - 2)).at(static_cast<std::size_t>(j - 1));
  }
  const T& b(int i) const { return b_.at(static_cast<std::size_t>(i - 1)); }
  T c(int i) const {
    if (i == stages() + 1) return lift(Rational(1), b_.front());
    return c_.at(static_cast<std::size_t>(i - 1));
  }

  const std::vector<T>& c_values() const { return c_; }
  const std::vector<T>& b_values() const { return b_; }
  const TriangularRows<T>& a_rows() const { return rows_; }

  T zero() const { return lift(Rational(0), b_.front()); }

  /// Dense 0-based s x s copy of a (zeros on and above the diagonal).
  std::vector<std::vector<T>> dense_a() const {
    const int s = stages();
    std::vector<std::vector<T>> m(static_cast<std::size_t>(s), std::vector<T>(static_cast<std::size_t>(s), zero()));
    for (int i = 2; i <= s; ++i)
      for (int j = 1; j < i; ++j) m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = a(i, j);
    return m;
  }

  friend bool operator==(const ButcherTableau& x, const ButcherTableau& y) {
    return x.c_ == y.c_ && x.rows_ == y.rows_ && x.b_ == y.b_;
  }

 private:
  ButcherTableau() = default;

  void validate_shape() const {
    if (b_.empty()) throw ValidationError("b", "a method needs at least one stage");
    const int s = stages();
    if (static_cast<int>(c_.size()) != s) {
      throw ValidationError("c", "expected " + std::to_string(s) + " nodes, got " + std::to_string(c_.size()));
    }
    detail::check_rows(rows_, s, "a");
  }

  void validate_consistency() const {
    if (!is_zero(c_.front())) throw ValidationError("c[1]", "explicit method requires c_1 = 0");
    for (int i = 2; i <= stages(); ++i) {
      const T sum = detail::row_sum(rows_[static_cast<std::size_t>(i - 2)], zero());
      if (!nearly_equal(sum, c(i))) {
        throw ValidationError("c" + detail::idx(i), "self-consistency c_i = sum_j a_ij violated: c_" +
                                                        std::to_string(i) + " = " + to_text(c(i)) +
                                                        " but row sum of a" + detail::idx(i) + " = " + to_text(sum));
      }
    }
  }

  std::vector<T> c_;
  TriangularRows<T> rows_;
  std::vector<T> b_;
};

/// The same method written as propagation from the previous stage:
/// y_i = y_{i-1} + h sum_j alpha(i, j) k_j, with alpha(s+1, j) == beta(j).
template <class T>
class AlphaForm {
 public:
  AlphaForm(TriangularRows<T> alpha_rows, std::vector<T> beta, std::vector<T> c)
      : rows_(std::move(alpha_rows)), beta_(std::move(beta)), c_(std::move(c)) {
    if (beta_.empty()) throw ValidationError("beta", "a method needs at least one stage");
    if (c_.size() != beta_.size()) throw ValidationError("c", "expected one node per stage");
    detail::check_rows(rows_, stages(), "alpha");
  }

  int stages() const { return static_cast<int>(beta_.size()); }
  T alpha(int i, int j) const {
    if (i == stages() + 1) return beta_.at(static_cast<std::size_t>(j - 1));
    if (j >= i || j < 1) return lift(Rational(0), beta_.front());
    return rows_.at(static_cast<std::size_t>(i - 2)).at(static_cast<std::size_t>(j - 1));
  }
  const T& beta(int i) const { return beta_.at(static_cast<std::size_t>(i - 1)); }
  const T& c(int i) const { return c_.at(static_cast<std::size_t>(i - 1)); }
  const TriangularRows<T>& alpha_rows() const { return rows_; }
  const std::vector<T>& beta_values() const { return beta_; }
  const std::vector<T>& c_values() const { return c_; }

  friend bool operator==(const AlphaForm& x, const AlphaForm& y) {
    return x.rows_ == y.rows_ && x.beta_ == y.beta_ && x.c_ == y.c_;
  }

 private:
  TriangularRows<T> rows_;
  std::vector<T> beta_;
  std::vector<T> c_;
};

/// Williamson two-register form: dy_i = A_i dy_{i-1} + h f(t + c_i h, y_{i-1}),
/// y_i = y_{i-1} + B_i dy_i.
template <class T>
class LowStorageForm {
 public:
  /// Nodes are reconstructed as row sums of the equivalent tableau.
  LowStorageForm(std::vector<T> A, std::vector<T> B) : A_(std::move(A)), B_(std::move(B)) {
    validate();
    c_ = derived_nodes();
  }

  /// Explicit nodes must agree with the reconstructed ones.
  LowStorageForm(std::vector<T> A, std::vector<T> B, std::vector<T> c)
      : A_(std::move(A)), B_(std::move(B)), c_(std::move(c)) {
    validate();
    if (c_.size() != A_.size()) throw ValidationError("c", "expected one node per stage");
    const auto derived = derived_nodes();
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!nearly_equal(c_[i], derived[i])) {
        throw ValidationError("c" + detail::idx(static_cast<int>(i) + 1),
                              "node " + to_text(c_[i]) + " disagrees with the value " + to_text(derived[i]) +
                                  " implied by A and B");
      }
    }
  }

  int stages() const { return static_cast<int>(A_.size()); }
  const T& A(int i) const { return A_.at(static_cast<std::size_t>(i - 1)); }
  const T& B(int i) const { return B_.at(static_cast<std::size_t>(i - 1)); }
  const T& c(int i) const { return c_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<T>& A_values() const { return A_; }
  const std::vector<T>& B_values() const { return B_; }
  const std::vector<T>& c_values() const { return c_; }

  friend bool operator==(const LowStorageForm& x, const LowStorageForm& y) {
    return x.A_ == y.A_ && x.B_ == y.B_ && x.c_ == y.c_;
  }

 private:
  void validate() const {
    if (A_.empty()) throw ValidationError("A", "a method needs at least one stage");
    if (A_.size() != B_.size()) throw ValidationError("B", "A and B must have the same length");
    if (!is_zero(A_.front())) throw ValidationError("A[1]", "self-starting method requires A_1 = 0");
    for (std::size_t i = 0; i < B_.size(); ++i) {
      if (is_zero(B_[i])) throw ValidationError("B" + detail::idx(static_cast<int>(i) + 1), "B_i must be nonzero");
    }
  }

  // a(i, j) = A_{j+1} a(i, j+1) + B_j, a(i, i-1) = B_{i-1}.
  std::vector<T> derived_nodes() const {
    const int s = stages();
    const T zero = lift(Rational(0), B_.front());
    std::vector<T> c{zero};
    for (int i = 2; i <= s; ++i) {
      T sum = zero;
      T next = zero;
      for (int j = i - 1; j >= 1; --j) {
        T aij = (j == i - 1) ? B(j) : A(j + 1) * next + B(j);
        sum += aij;
        next = std::move(aij);
      }
      c.push_back(std::move(sum));
    }
    return c;
  }

  std::vector<T> A_;
  std::vector<T> B_;
  std::vector<T> c_;
};

/// Coefficient-wise conversion (e.g. Rational -> double). Consistency is
/// preserved up to rounding, so the result is built unchecked.
template <class U, class T, class Fn>
ButcherTableau<U> map_coefficients(const ButcherTableau<T>& t, Fn&& fn) {
  auto conv = [&](const std::vector<T>& v) {
    std::vector<U> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(fn(x));
    return out;
  };
  TriangularRows<U> rows;
  for (const auto& row : t.a_rows()) rows.push_back(conv(row));
  return ButcherTableau<U>::unchecked(conv(t.c_values()), std::move(rows), conv(t.b_values()));
}

template <class U, class T, class Fn>
LowStorageForm<U> map_coefficients(const LowStorageForm<T>& f, Fn&& fn) {
  auto conv = [&](const std::vector<T>& v) {
    std::vector<U> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(fn(x));
    return out;
  };
  return LowStorageForm<U>(conv(f.A_values()), conv(f.B_values()));
}

inline ButcherTableau<double> to_double(const ButcherTableau<Rational>& t) {
  return map_coefficients<double>(t, [](const Rational& q) { return q.to_double(); });
}
inline ButcherTableau<double> to_double(const ButcherTableau<ExtFloat>& t) {
  return map_coefficients<double>(t, [](const ExtFloat& x) { return x.to_double(); });
}
inline LowStorageForm<double> to_double(const LowStorageForm<Rational>& f) {
  return map_coefficients<double>(f, [](const Rational& q) { return q.to_double(); });
}
inline LowStorageForm<double> to_double(const LowStorageForm<ExtFloat>& f) {
  return map_coefficients<double>(f, [](const ExtFloat& x) { return x.to_double(); });
}
inline ButcherTableau<ExtFloat> to_ext(const ButcherTableau<Rational>& t, int bits) {
  return map_coefficients<ExtFloat>(t, [bits](const Rational& q) { return ExtFloat(q, bits); });
}
inline LowStorageForm<ExtFloat> to_ext(const LowStorageForm<Rational>& f, int bits) {
  return map_coefficients<ExtFloat>(f, [bits](const Rational& q) { return ExtFloat(q, bits); });
}

}  // namespace lsrk

#pragma once

// Shared helpers for the test binaries: a seeded generator for random
// rational coefficients and literal, index-by-index transcriptions of the
// defining equations, written without the library's helpers so they can
// serve as oracles.

#include <random>
#include <vector>

#include "lsrk/rational.hpp"
#include "lsrk/tableau.hpp"

namespace lsrk::test {

class RandomRationals {
 public:
  explicit RandomRationals(std::uint64_t seed) : gen_(seed) {}

  // p/q with 1 <= |p| <= max_num, 1 <= q <= max_den.
  Rational nonzero(int max_num = 30, int max_den = 20) {
    std::uniform_int_distribution<long> num(1, max_num), den(1, max_den), sign(0, 1);
    const long p = num(gen_);
    return Rational(sign(gen_) ? -p : p, den(gen_));
  }
  Rational any(int max_num = 30, int max_den = 20) {
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
    return Rational(num(gen_), den(gen_));
  }
  Rational positive(int max_num = 30, int max_den = 20) { return abs(nonzero(max_num, max_den)); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  // Random explicit tableau with s stages and arbitrary (possibly zero) entries.
  ButcherTableau<Rational> tableau(int s) {
    TriangularRows<Rational> rows;
    for (int i = 2; i <= s; ++i) {
      std::vector<Rational> row;
      for (int j = 1; j < i; ++j) row.push_back(any(6, 6));
      rows.push_back(std::move(row));
    }
    std::vector<Rational> b;
    for (int i = 1; i <= s; ++i) b.push_back(any(6, 6));
    return ButcherTableau<Rational>::from_rows(std::move(rows), std::move(b));
  }

  // Random two-register form: A_1 = 0, every other A_i and every B_i nonzero.
  LowStorageForm<Rational> lowstorage(int s) {
    std::vector<Rational> A{Rational(0)}, B;
    for (int i = 2; i <= s; ++i) A.push_back(nonzero(10, 9));
    for (int i = 1; i <= s; ++i) B.push_back(nonzero(10, 9));
    return LowStorageForm<Rational>(std::move(A), std::move(B));
  }

 private:
  std::mt19937_64 gen_;
};

// Dense (s+1) x s matrix M with M[i][j] = a_ij (1-based), row s+1 holding b.
inline std::vector<std::vector<Rational>> dense_with_b(const ButcherTableau<Rational>& t) {
  const int s = t.stages();
  std::vector<std::vector<Rational>> M(static_cast<std::size_t>(s + 2), std::vector<Rational>(static_cast<std::size_t>(s + 1)));
  for (int i = 2; i <= s; ++i)
    for (int j = 1; j < i; ++j) M[i][j] = t.a_rows()[static_cast<std::size_t>(i - 2)][static_cast<std::size_t>(j - 1)];
  for (int j = 1; j <= s; ++j) M[s + 1][j] = t.b_values()[static_cast<std::size_t>(j - 1)];
  return M;
}

// a_ij (b_{j-1} - a_{j,j-1}) = (a_{i,j-1} - a_{j,j-1}) b_j, i = 3..s, j = 2..i-1,
// in the order i ascending, then j ascending.
inline std::vector<Rational> form_two_oracle(const ButcherTableau<Rational>& t) {
  const auto M = dense_with_b(t);
  const int s = t.stages();
  const auto& b = M[s + 1];
  std::vector<Rational> out;
  for (int i = 3; i <= s; ++i)
    for (int j = 2; j <= i - 1; ++j) out.push_back(M[i][j] * (b[j - 1] - M[j][j - 1]) - (M[i][j - 1] - M[j][j - 1]) * b[j]);
  return out;
}

// The alternative constraint set: for i = 3..s and j = 2..i-2
//   a_ij (a_{i-1,j-1} - a_{j,j-1}) = (a_{i,j-1} - a_{j,j-1}) a_{i-1,j},
// and for each i, with the row index of the second equation read as i-1,
//   a_{i,i-1} (b_{i-2} - a_{i-1,i-2}) = (a_{i,i-2} - a_{i-1,i-2}) b_{i-1}.
inline std::vector<Rational> form_one_oracle(const ButcherTableau<Rational>& t) {
  const auto M = dense_with_b(t);
  const int s = t.stages();
  const auto& b = M[s + 1];
  std::vector<Rational> out;
  for (int i = 3; i <= s; ++i) {
    for (int j = 2; j <= i - 2; ++j)
      out.push_back(M[i][j] * (M[i - 1][j - 1] - M[j][j - 1]) - (M[i][j - 1] - M[j][j - 1]) * M[i - 1][j]);
    out.push_back(M[i][i - 1] * (b[i - 2] - M[i - 1][i - 2]) - (M[i][i - 2] - M[i - 1][i - 2]) * b[i - 1]);
  }
  return out;
}

// Order conditions through order 4 by explicit summation over index tuples,
// as (LHS - RHS) in the library's order.
inline std::vector<Rational> order_oracle(const ButcherTableau<Rational>& t) {
  const auto M = dense_with_b(t);
  const int s = t.stages();
  std::vector<Rational> c(static_cast<std::size_t>(s + 1));
  for (int i = 1; i <= s; ++i)
    for (int j = 1; j < i; ++j) c[i] += M[i][j];
  const auto& b = M[s + 1];
  Rational e1, e2, e3a, e3b, e4a, e4b, e4c, e4d;
  for (int i = 1; i <= s; ++i) {
    e1 += b[i];
    e2 += b[i] * c[i];
    e3a += b[i] * c[i] * c[i];
    e4a += b[i] * c[i] * c[i] * c[i];
    for (int j = 1; j <= s; ++j) {
      e3b += b[i] * M[i][j] * c[j];
      e4b += b[i] * c[i] * M[i][j] * c[j];
      e4c += b[i] * M[i][j] * c[j] * c[j];
      for (int k = 1; k <= s; ++k) e4d += b[i] * M[i][j] * M[j][k] * c[k];
    }
  }
  return {e1 - 1,           e2 - Rational(1, 2),  e3a - Rational(1, 3),  e3b - Rational(1, 6),
          e4a - Rational(1, 4), e4b - Rational(1, 8), e4c - Rational(1, 12), e4d - Rational(1, 24)};
}

// y_{n+1} from the two-register recurrence, written out directly:
//   dy = A_i dy + h f(t + c_i h, y);  y = y + B_i dy.
template <class F>
Rational lowstorage_step_oracle(const LowStorageForm<Rational>& f, F&& rhs, const Rational& t, Rational y,
                                const Rational& h) {
  Rational dy;
  for (int i = 1; i <= f.stages(); ++i) {
    dy = f.A(i) * dy + h * rhs(t + f.c(i) * h, y);
    y += f.B(i) * dy;
  }
  return y;
}

}  // namespace lsrk::test

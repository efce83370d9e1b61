#include "lsrk/refine.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lsrk {

namespace {

// Forward-mode dual number carrying a gradient with respect to the unknowns.
// An empty gradient stands for a constant.
struct Dual {
  ExtFloat v;
  std::vector<ExtFloat> d;

  Dual() = default;
  Dual(ExtFloat value, std::vector<ExtFloat> grad = {}) : v(std::move(value)), d(std::move(grad)) {}

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }

  friend Dual combine(const Dual& x, const Dual& y, ExtFloat v, const ExtFloat& cx, const ExtFloat& cy) {
    // gradient = cx * x.d + cy * y.d
    const std::size_t n = std::max(x.d.size(), y.d.size());
    std::vector<ExtFloat> d;
    d.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      ExtFloat g = ExtFloat::zero(v.precision());
      if (k < x.d.size()) g += cx * x.d[k];
      if (k < y.d.size()) g += cy * y.d[k];
      d.push_back(std::move(g));
    }
    return Dual(std::move(v), std::move(d));
  }

  friend Dual operator+(const Dual& x, const Dual& y) {
    const ExtFloat one(1.0, x.v.precision());
    return combine(x, y, x.v + y.v, one, one);
  }
  friend Dual operator-(const Dual& x, const Dual& y) {
    const ExtFloat one(1.0, x.v.precision());
    return combine(x, y, x.v - y.v, one, -one);
  }
  friend Dual operator*(const Dual& x, const Dual& y) { return combine(x, y, x.v * y.v, y.v, x.v); }
  friend Dual operator/(const Dual& x, const Dual& y) {
    const ExtFloat q = x.v / y.v;
    return combine(x, y, q, ExtFloat(1.0, x.v.precision()) / y.v, -q / y.v);
  }
  Dual operator-() const {
    Dual out(-v, d);
    for (auto& g : out.d) g = -g;
    return out;
  }
  friend bool operator>(const Dual& x, const Dual& y) { return x.v > y.v; }
  friend Dual abs(const Dual& x) { return x.v.sign() < 0 ? -x : x; }
};

bool is_zero(const Dual& x) { return x.v.is_zero(); }
Dual lift(const Rational& q, const Dual& like) { return Dual(ExtFloat(q, like.v.precision())); }
bool nearly_equal(const Dual& a, const Dual& b) { return nearly_equal(a.v, b.v); }
std::string to_text(const Dual& x) { return x.v.to_string(); }

struct Param {
  bool is_a;
  int index;
};

Param parse_param(const std::string& name, int s) {
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'B')) {
    try {
      std::size_t used = 0;
      const int i = std::stoi(name.substr(1), &used);
      const bool is_a = name[0] == 'A';
      if (used == name.size() - 1 && i >= (is_a ? 2 : 1) && i <= s) return {is_a, i};
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("unknown parameter '" + name + "' (expected A2..A" + std::to_string(s) + " or B1..B" +
                              std::to_string(s) + ")");
}

int condition_count(int order) {
  static const int counts[] = {0, 1, 2, 4, 8};
  if (order < 1 || order > 4) throw std::invalid_argument("order must be in 1..4, got " + std::to_string(order));
  return counts[order];
}

std::string sci6(const ExtFloat& x) { return x.to_string(6); }

ExtFloat max_abs(const std::vector<ExtFloat>& r) {
  ExtFloat m = ExtFloat::zero(r.empty() ? ExtFloat::kMinBits : r.front().precision());
  for (const auto& x : r)
    if (abs(x) > m) m = abs(x);
  return m;
}

// Solves J x = rhs by Gaussian elimination with partial pivoting.
std::vector<ExtFloat> solve_linear(std::vector<std::vector<ExtFloat>> J, std::vector<ExtFloat> rhs, int bits) {
  const std::size_t n = rhs.size();
  ExtFloat scale = ExtFloat::zero(bits);
  for (const auto& row : J)
    for (const auto& x : row)
      if (abs(x) > scale) scale = abs(x);
  const ExtFloat tiny = ldexp(scale, -bits / 2);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(J[i][k]) > abs(J[p][k])) p = i;
    if (!(abs(J[p][k]) > tiny)) {
      throw SingularJacobianError("Jacobian is singular to working precision (column " + std::to_string(k + 1) + ")");
    }
    std::swap(J[k], J[p]);
    std::swap(rhs[k], rhs[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const ExtFloat m = J[i][k] / J[k][k];
      for (std::size_t j = k; j < n; ++j) J[i][j] -= m * J[k][j];
      rhs[i] -= m * rhs[k];
    }
  }
  std::vector<ExtFloat> x(n, ExtFloat::zero(bits));
  for (std::size_t i = n; i-- > 0;) {
    ExtFloat acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= J[i][j] * x[j];
    x[i] = acc / J[i][i];
  }
  return x;
}

}  // namespace

LowStorageForm<ExtFloat> at_precision(const LowStorageForm<ExtFloat>& f, int bits) {
  auto conv = [bits](const std::vector<ExtFloat>& xs) {
    std::vector<ExtFloat> out;
    for (const auto& x : xs) out.push_back(ExtFloat::parse(x.to_string(), bits));
    return out;
  };
  return LowStorageForm<ExtFloat>(conv(f.A_values()), conv(f.B_values()));
}

ResidualReport<ExtFloat> residuals_extended(const Scheme& scheme, int order, int bits) {
  if (bits < 128) throw std::invalid_argument("extended residuals need at least 128 bits, got " + std::to_string(bits));
  if (scheme.number_kind() == NumberKind::rational) {
    const auto& f = scheme.rational();
    if (f.lowstorage) return order_residuals(lowstorage_to_a(to_ext(*f.lowstorage, bits)), order);
    return order_residuals(to_ext(tableau_of(f), bits), order);
  }
  const auto& f = scheme.decimal();
  if (f.lowstorage) return order_residuals(lowstorage_to_a(at_precision(*f.lowstorage, bits)), order);
  const auto t = tableau_of(f);
  const auto reparsed = map_coefficients<ExtFloat>(t, [bits](const ExtFloat& x) { return ExtFloat::parse(x.to_string(), bits); });
  return order_residuals(reparsed, order);
}

std::vector<std::string> lowstorage_parameter_names(int stages) {
  std::vector<std::string> out;
  for (int i = 2; i <= stages; ++i) out.push_back("A" + std::to_string(i));
  for (int i = 1; i <= stages; ++i) out.push_back("B" + std::to_string(i));
  return out;
}

ExtFloat parameter_value(const LowStorageForm<ExtFloat>& f, const std::string& name) {
  const auto p = parse_param(name, f.stages());
  return p.is_a ? f.A(p.index) : f.B(p.index);
}

LowStorageForm<ExtFloat> with_parameter(const LowStorageForm<ExtFloat>& f, const std::string& name,
                                        const ExtFloat& value) {
  const auto p = parse_param(name, f.stages());
  auto A = f.A_values();
  auto B = f.B_values();
  (p.is_a ? A : B)[static_cast<std::size_t>(p.index - 1)] = value;
  return LowStorageForm<ExtFloat>(std::move(A), std::move(B));
}

std::vector<ExtFloat> condition_residuals(const LowStorageForm<ExtFloat>& f, int order) {
  std::vector<ExtFloat> out;
  for (auto& e : order_residuals(lowstorage_to_a(f), order).entries) out.push_back(std::move(e.value));
  return out;
}

std::vector<std::vector<ExtFloat>> condition_jacobian(const LowStorageForm<ExtFloat>& f,
                                                      const std::vector<std::string>& unknowns, int order) {
  const int s = f.stages();
  const int bits = f.B(1).precision();
  const std::size_t n = unknowns.size();
  std::vector<Dual> A, B;
  for (int i = 1; i <= s; ++i) {
    A.emplace_back(f.A(i));
    B.emplace_back(f.B(i));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = parse_param(unknowns[k], s);
    auto& slot = (p.is_a ? A : B)[static_cast<std::size_t>(p.index - 1)];
    slot.d.assign(n, ExtFloat::zero(bits));
    slot.d[k] = ExtFloat(1.0, bits);
  }
  const LowStorageForm<Dual> form(std::move(A), std::move(B));
  const auto report = order_residuals(lowstorage_to_a(form), order);
  std::vector<std::vector<ExtFloat>> J;
  for (const auto& e : report.entries) {
    std::vector<ExtFloat> row = e.value.d;
    row.resize(n, ExtFloat::zero(bits));
    J.push_back(std::move(row));
  }
  return J;
}

RefineResult newton_refine(const LowStorageForm<ExtFloat>& initial, const std::map<std::string, ExtFloat>& pins,
                           int order, int bits) {
  if (bits < ExtFloat::kMinBits) throw std::invalid_argument("precision below " + std::to_string(ExtFloat::kMinBits));
  const int s = initial.stages();
  const int equations = condition_count(order);
  LowStorageForm<ExtFloat> x = at_precision(initial, bits);
  std::set<std::string> pinned;
  for (const auto& [name, value] : pins) {
    parse_param(name, s);
    x = with_parameter(x, name, value.with_precision(bits));
    pinned.insert(name);
  }
  std::vector<std::string> unknowns;
  for (const auto& name : lowstorage_parameter_names(s))
    if (pinned.count(name) == 0) unknowns.push_back(name);
  if (static_cast<int>(unknowns.size()) != equations) {
    std::string list;
    for (const auto& u : unknowns) list += (list.empty() ? "" : ", ") + u;
    throw DimensionError(std::to_string(unknowns.size()) + " unknowns (" + list + ") but " + std::to_string(equations) +
                         " order conditions through order " + std::to_string(order));
  }

  const ExtFloat tol = ldexp(ExtFloat(1.0, bits), -(bits - 20));
  constexpr int kMaxIterations = 50;
  constexpr int kMaxHalvings = 60;
  RefineResult out{x, 0, {}};
  auto history_text = [&] {
    std::vector<std::string> h;
    for (const auto& r : out.history) h.push_back(sci6(r));
    return h;
  };

  std::vector<ExtFloat> r = condition_residuals(x, order);
  ExtFloat norm = max_abs(r);
  out.history.push_back(norm);
  while (!(norm < tol)) {
    if (out.iterations == kMaxIterations) {
      throw ConvergenceError("no convergence in " + std::to_string(kMaxIterations) + " iterations (max residual " +
                                 sci6(norm) + ")",
                             history_text());
    }
    const auto J = condition_jacobian(x, unknowns, order);
    std::vector<ExtFloat> rhs;
    for (const auto& v : r) rhs.push_back(-v);
    const auto delta = solve_linear(J, rhs, bits);

    ExtFloat lambda(1.0, bits);
    bool accepted = false;
    for (int k = 0; k <= kMaxHalvings && !accepted; ++k) {
      try {
        LowStorageForm<ExtFloat> trial = x;
        for (std::size_t j = 0; j < unknowns.size(); ++j) {
          trial = with_parameter(trial, unknowns[j], parameter_value(x, unknowns[j]) + lambda * delta[j]);
        }
        auto trial_r = condition_residuals(trial, order);
        ExtFloat trial_norm = max_abs(trial_r);
        if (trial_norm < norm) {
          x = std::move(trial);
          r = std::move(trial_r);
          norm = std::move(trial_norm);
          accepted = true;
        }
      } catch (const ValidationError&) {
        // step leaves the admissible set (some B_i hit zero); shorten it
      }
      lambda = ldexp(lambda, -1);
    }
    ++out.iterations;
    if (!accepted) {
      throw ConvergenceError("line search failed to reduce the residual (max residual " + sci6(norm) + ")",
                             history_text());
    }
    out.history.push_back(norm);
  }
  out.form = x;
  return out;
}

}  // namespace lsrk

#include "lsrk/construct.hpp"

#include "lsrk/conditions.hpp"

namespace lsrk {
namespace {

const Rational kHalf(1, 2);
const Rational kThird(1, 3);
const Rational kSixth(1, 6);

std::string join_params(const std::vector<Rational>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : "_") + x.to_string();
  return out;
}

std::string tuple_text(const std::vector<Rational>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i].to_string();
  return out + ")";
}

void require_nonzero(const Rational& x, const std::string& condition, const std::string& what) {
  if (x.is_zero()) throw SpecialCaseError(condition, what);
}

// Full scheme from (b, c), checked to be third order and 2N-storage.
template <class T>
Scheme verified_scheme(const std::string& name, const std::vector<T>& b, const std::vector<T>& c,
                       const std::string& provenance) {
  SchemeForms<T> forms;
  forms.tableau = derive_a_from_bc(b, c);
  const auto report = order_residuals(*forms.tableau, 3);
  for (const auto& e : report.entries) {
    if (!negligible(e.value)) throw InternalConsistencyError(name + ": order condition " + e.id + " not satisfied");
  }
  auto check = is_two_n_storage(*forms.tableau);
  if (!check.ok) throw NotTwoNStorageError(0, name + ": " + check.reason);
  forms.lowstorage = std::move(check.form);
  return Scheme(name, 3, std::move(forms), provenance);
}

// b2 as a root of the final equation, either exact or rounded.
struct Root {
  std::optional<Rational> exact;
  std::optional<ExtFloat> approx;
};

std::vector<Root> roots_of(const QuadraticRoots& q) {
  std::vector<Root> out;
  for (const auto& r : q.exact) out.push_back({r, std::nullopt});
  for (const auto& r : q.approx) out.push_back({std::nullopt, r});
  return out;
}

// Runs `build` once per root, collecting schemes and per-root failures.
template <class Build>
SolveResult collect(QuadraticRoots roots, const std::string& base, bool include_irrational, Build&& build) {
  SolveResult out;
  out.roots = std::move(roots);
  if (out.roots.kind == RootKind::complex_pair) {
    out.diagnostics.push_back("the b2 equation has complex roots; no real scheme");
    return out;
  }
  if (out.roots.kind == RootKind::degenerate_constant) {
    out.diagnostics.push_back(out.roots.constant_is_zero ? "the b2 equation vanishes identically; b2 is free"
                                                         : "the b2 equation has no solution");
    return out;
  }
  auto list = roots_of(out.roots);
  if (!include_irrational && !out.roots.approx.empty()) {
    out.diagnostics.push_back("irrational roots skipped");
    list.resize(out.roots.exact.size());
  }
  std::optional<SpecialCaseError> first_special;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string name = list.size() > 1 ? base + "-root" + std::to_string(k) : base;
    try {
      out.schemes.push_back(build(name, list[k]));
    } catch (const SpecialCaseError& e) {
      if (!first_special) first_special = e;
      out.diagnostics.push_back(name + ": " + e.what());
    } catch (const NotTwoNStorageError& e) {
      out.diagnostics.push_back(name + ": root rejected, " + e.what());
    } catch (const ValidationError& e) {
      out.diagnostics.push_back(name + ": root rejected, " + e.what());
    }
  }
  if (out.schemes.empty() && first_special) throw *first_special;
  return out;
}

template <class T>
std::vector<T> lifted(const std::vector<Rational>& xs, const T& like) {
  std::vector<T> out;
  for (const auto& x : xs) out.push_back(lift(x, like));
  return out;
}

}  // namespace

SolveResult solve_43(const Rational& c2, const Rational& c3, const Rational& c4, int bits,
                     bool include_irrational) {
  const std::string hint = "use solve_43_special";
  require_nonzero(c2, "c2 = 0", "c2 must be nonzero");
  require_nonzero(c3, "c3 = 0", "c3 must be nonzero");
  require_nonzero(c4, "c4 = 0", "c4 must be nonzero");
  require_nonzero(c3 - c2, "c2 = c3", "c2 equals c3; " + hint + " (c2eqc3)");
  require_nonzero(c4 - c3, "c3 = c4", "c3 equals c4; " + hint + " (c3eqc4)");
  require_nonzero(c4 - c2, "c2 = c4", "c2 equals c4");

  const Rational z1 = c3 * c4 * (1 - c2) - kHalf * (c3 + c4) + kThird;
  const Rational z2 = c3 + c4 - Rational(3, 2) * c3 * c4 - Rational(2, 3);
  const Rational z3 = c4 * (c4 - c3) * (1 - c3) + kHalf * c3 - kThird;
  const Rational z4 = c3 * c4 - kHalf * c2 * (c3 + c4) - kThird * (c3 + c4 - 2 * c2);
  const Rational z5 = kHalf * (c3 * c4 - c2 * c3 - c2 * c4) + kHalf * c2 - kSixth * (c3 + c4);
  const Rational q0 = kSixth * z1 * (z2 - z3);
  const Rational q1 = z1 * z4 + z3 * z5 + kSixth * (z2 + z1) * (c3 - c2);
  const Rational q2 = (c3 - c2) * (z4 - z5 - (c4 - c2) * (z1 + z3));

  // b3 = w3 + r3 b2, b4 = w4 + r4 b2
  const Rational w3 = (c4 / 2 - kThird) / (c3 * (c4 - c3));
  const Rational r3 = -c2 * (c4 - c2) / (c3 * (c4 - c3));
  const Rational w4 = (kThird - c3 / 2) / (c4 * (c4 - c3));
  const Rational r4 = c2 * (c3 - c2) / (c4 * (c4 - c3));

  const std::vector<Rational> params{c2, c3, c4};
  const std::string base = "43-" + join_params(params);
  auto build = [&](const std::string& name, const Root& root) {
    const std::string prov = "closed-form (4,3) 2N-storage solution, (c2, c3, c4) = " + tuple_text(params);
    if (root.exact) {
      const Rational b2 = *root.exact / c2;
      const Rational b3 = w3 + r3 * b2;
      const Rational b4 = w4 + r4 * b2;
      return verified_scheme<Rational>(name, {1 - b2 - b3 - b4, b2, b3, b4}, {0, c2, c3, c4},
                                       prov + ", b2 = " + b2.to_string());
    }
    const ExtFloat& x = *root.approx;
    const ExtFloat b2 = x / lift(c2, x);
    const ExtFloat b3 = lift(w3, x) + lift(r3, x) * b2;
    const ExtFloat b4 = lift(w4, x) + lift(r4, x) * b2;
    const ExtFloat one(Rational(1), x.precision());
    const std::vector<ExtFloat> c = lifted(std::vector<Rational>{0, c2, c3, c4}, x);
    return verified_scheme<ExtFloat>(name, {one - b2 - b3 - b4, b2, b3, b4}, c,
                                     prov + ", b2 = " + b2.to_string(20) + " (irrational)");
  };
  return collect(solve_quadratic(q2, q1, q0, bits), base, include_irrational, build);
}

std::string to_string(Special43 which) {
  switch (which) {
    case Special43::b2zero: return "b2zero";
    case Special43::b3zero: return "b3zero";
    case Special43::c2eqc3: return "c2eqc3";
    case Special43::c3eqc4: return "c3eqc4";
  }
  return "?";
}

Special43 parse_special43(const std::string& text) {
  for (auto which : {Special43::b2zero, Special43::b3zero, Special43::c2eqc3, Special43::c3eqc4}) {
    if (to_string(which) == text) return which;
  }
  throw std::invalid_argument("unknown special case '" + text + "' (expected b2zero, b3zero, c2eqc3 or c3eqc4)");
}

Scheme solve_43_special(Special43 which, const Rational& p1, const Rational& p2) {
  Rational b1, b2, b3, b4, c2, c3, c4, a32, a42, a43;
  auto nz = [](const Rational& x, const std::string& condition) {
    require_nonzero(x, condition, "required condition fails for these parameters");
    return x;
  };
  switch (which) {
    case Special43::b2zero: {
      c2 = p1;
      c3 = p2;
      nz(c2, "c2 != 0");
      c4 = (kThird - c3 / 2) / nz(kHalf - (1 - c2) * c3, "1/2 - (1 - c2) c3 != 0");
      b4 = (kThird - c3 / 2) / nz(c4 * (c4 - c3), "c4 (c4 - c3) != 0");
      b3 = 1 - c2 - b4;
      nz(b3, "b3 != 0");
      a43 = b3 / nz(b3 - c3 + c2, "b3 - c3 + c2 != 0") * (c4 - c3);
      a32 = (c3 - c2) / c2 * (kSixth - b4 * a43 * c3) / nz(kHalf - c2 * (1 - c2) - b4 * a43,
                                                             "1/2 - c2 (1 - c2) - b4 a43 != 0");
      a42 = (c4 - c2 - a43) / nz(c3 - c2, "c2 != c3") * a32;
      b1 = c2;
      b2 = 0;
      break;
    }
    case Special43::b3zero: {
      c2 = p1;
      c4 = p2;
      nz(c2, "c2 != 0");
      nz(c4, "c4 != 0");
      b2 = (c4 / 2 - kThird) / nz(c2 * (c4 - c2), "c2 != c4");
      nz(b2, "b2 != 0");
      b4 = (kThird - c2 / 2) / (c4 * (c4 - c2));
      c3 = 1 - b4;
      b1 = c3 - b2;
      a43 = ((c3 - c2) / (6 * nz(b4, "b4 != 0")) - b2 * c2 * (c4 - c2)) /
            nz((c3 - c2) * c3 - b2 * c2, "(c3 - c2) c3 - b2 c2 != 0");
      a42 = b2 / nz(c3 - c2, "c2 != c3") * (c4 - c2 - a43);
      a32 = b2;
      b3 = 0;
      break;
    }
    case Special43::c2eqc3: {
      c2 = p1;
      c4 = p2;
      c3 = c2;
      nz(c2, "c2 != 0");
      nz(c4, "c4 != 0");
      b4 = (kThird - c2 / 2) / nz(c4 * (c4 - c2), "c2 != c4");
      b3 = 1 - c2 - b4;
      b2 = (c4 / 2 - kThird) / (c2 * (c4 - c2)) - b3;
      b1 = c2 - b2;
      a43 = c4 - c2;
      a32 = (b4 * (b2 + b3) * a43 - b3 / (6 * c2)) / nz(b4 * a43 - b3 * (1 - c2), "b4 a43 - b3 (1 - c2) != 0");
      a42 = (b2 * a43 - (a43 - b3) * a32) / nz(b3, "b3 != 0");
      break;
    }
    case Special43::c3eqc4: {
      c2 = p1;
      c3 = p2;
      c4 = c3;
      nz(c2, "c2 != 0");
      nz(c3, "c3 != 0");
      b2 = (c3 / 2 - kThird) / nz(c2 * (c3 - c2), "c2 != c3");
      b4 = 1 - c3;
      b3 = (kThird - c2 / 2) / (c3 * (c3 - c2)) - b4;
      b1 = c3 - b2 - b3;
      const Rational d = nz(b1 + b2 - c2, "b1 + b2 - c2 != 0");
      a32 = b2 / d * (c3 - c2);
      a43 = ((kSixth - b3 * a32 * c2) * d - b4 * b2 * c2 * (c3 - c2)) /
            nz(b4 * (d * c3 - b2 * c2), "b4 ((b1 + b2 - c2) c3 - b2 c2) != 0");
      a42 = b2 / d * (c3 - c2 - a43);
      break;
    }
  }
  const std::vector<Rational> params{p1, p2};
  const std::string name = "43-" + to_string(which) + "-" + join_params(params);
  SchemeForms<Rational> forms;
  forms.tableau.emplace(std::vector<Rational>{0, c2, c3, c4},
                        TriangularRows<Rational>{{c2}, {c3 - a32, a32}, {c4 - a42 - a43, a42, a43}},
                        std::vector<Rational>{b1, b2, b3, b4});
  const auto report = order_residuals(*forms.tableau, 3);
  for (const auto& e : report.entries) {
    if (!e.value.is_zero()) throw InternalConsistencyError(name + ": order condition " + e.id + " not satisfied");
  }
  auto check = is_two_n_storage(*forms.tableau);
  if (!check.ok) {
    throw SpecialCaseError("2N-storage", "parameters " + tuple_text(params) + " give a third-order scheme that is "
                                         "not 2N-storage: " + check.reason);
  }
  forms.lowstorage = std::move(check.form);
  return Scheme(name, 3, std::move(forms),
                "(4,3) 2N-storage special case " + to_string(which) + ", parameters " + tuple_text(params));
}

namespace {

struct Chain53 {
  Rational w1, r1, w2, r2;
  std::vector<Rational> C;
};

Chain53 chain_53(const Rational& c2, const Rational& c3, const Rational& c4, const Rational& c5, const Rational& b5) {
  require_nonzero(c2, "c2 = 0", "c2 must be nonzero");
  require_nonzero(c3, "c3 = 0", "c3 must be nonzero");
  require_nonzero(c4, "c4 = 0", "c4 must be nonzero");
  require_nonzero(c3 - c2, "c2 = c3", "nodes must be pairwise distinct");
  require_nonzero(c4 - c3, "c3 = c4", "nodes must be pairwise distinct");
  require_nonzero(c4 - c2, "c2 = c4", "nodes must be pairwise distinct");
  require_nonzero(c5 - c2, "c2 = c5", "nodes must be pairwise distinct");
  require_nonzero(c5 - c3, "c3 = c5", "nodes must be pairwise distinct");
  require_nonzero(c5 - c4, "c4 = c5", "nodes must be pairwise distinct");
  require_nonzero(1 - b5 - c4, "1 - b5 - c4 = 0", "b5 = 1 - c4 makes the chain singular");

  Chain53 k;
  k.w1 = (c4 * (kHalf - b5 * c5) - (kThird - b5 * c5 * c5)) / (c3 * (c4 - c3));
  k.r1 = -c2 * (c4 - c2) / (c3 * (c4 - c3));
  k.w2 = (kThird - b5 * c5 * c5 - c3 * (kHalf - b5 * c5)) / (c4 * (c4 - c3));
  k.r2 = c2 * (c3 - c2) / (c4 * (c4 - c3));
  const Rational w3 = (c5 - c4) * k.w2 / (1 - b5 - c4);
  const Rational r3 = (c5 - c4) * k.r2 / (1 - b5 - c4);
  const Rational w4 = b5 * c4 * w3 - kSixth;
  const Rational r4 = b5 * c4 * r3;
  const Rational w5 = b5 * c3 * (c5 - c3 - w3);
  const Rational r5 = -b5 * c3 * r3;
  const Rational w6 = 1 - b5 - c3 - k.w2;
  const Rational r6 = -k.r2;
  const Rational w7 = b5 * c2 * ((c5 - w3) * (w6 - k.w1) - c2 * w6 + c3 * k.w1);
  const Rational r7 = b5 * c2 * (r3 * (k.w1 - w6) + (c5 - w3) * (r6 - k.r1) - c2 * r6 + c3 * k.r1);
  const Rational z7 = b5 * c2 * r3 * (k.r1 - r6);
  const Rational w8 = c2 * ((c4 - c2) * w6 - (c4 - c3) * k.w1);
  const Rational r8 = c2 * ((c4 - c2) * r6 - (c4 - c3) * k.r1);
  const Rational w9 = 1 - b5 - c2 - k.w1 - k.w2;
  const Rational r9 = -k.r1 - k.r2;

  // (x + X b2)(y + Y b2)(z + Z b2) by powers of b2
  auto triple = [](const Rational& x, const Rational& y, const Rational& z, const Rational& X, const Rational& Y,
                   const Rational& Z) {
    return std::vector<Rational>{x * y * z, x * y * Z + x * Y * z + X * y * z, x * Y * Z + X * y * Z + X * Y * z,
                                 X * Y * Z};
  };
  std::vector<std::vector<Rational>> chi;
  chi.push_back(triple(w4, w6, w9, r4, r6, r9));
  chi.push_back(triple(k.w1, w5, w9, k.r1, r5, r9));
  chi.push_back({0, w7, r7, z7});
  auto t4 = triple(k.w1, k.w2, w9, k.r1, k.r2, r9);
  for (auto& x : t4) x = c3 * (c4 - c3) * x;
  chi.push_back(t4);
  chi.push_back({0, k.w2 * w8, k.w2 * r8 + k.r2 * w8, k.r2 * r8});
  const Rational f = c2 * (c3 - c2);
  chi.push_back({0, f * k.w1 * w6, f * (k.w1 * r6 + k.r1 * w6), f * k.r1 * r6});
  k.C.assign(4, Rational(0));
  for (const auto& row : chi)
    for (std::size_t p = 0; p < 4; ++p) k.C[p] += row[p];
  return k;
}

}  // namespace

std::vector<Rational> cubic_53(const Rational& c2, const Rational& c3, const Rational& c4, const Rational& c5,
                               const Rational& b5) {
  return chain_53(c2, c3, c4, c5, b5).C;
}

SolveResult solve_53(const Rational& c2, const Rational& c3, const Rational& c4, const Rational& c5,
                     const Rational& b5, int bits, bool include_irrational) {
  const Chain53 k = chain_53(c2, c3, c4, c5, b5);
  if (!k.C[3].is_zero()) {
    throw InternalConsistencyError("cubic coefficient of the (5,3) b2 equation is " + k.C[3].to_string() +
                                   ", expected exactly 0");
  }
  const std::vector<Rational> params{c2, c3, c4, c5, b5};
  const std::string base = "53-" + join_params(params);
  auto build = [&](const std::string& name, const Root& root) {
    const std::string prov = "closed-form (5,3) 2N-storage solution, (c2, c3, c4, c5, b5) = " + tuple_text(params);
    if (root.exact) {
      const Rational& b2 = *root.exact;
      const Rational b3 = k.w1 + k.r1 * b2;
      const Rational b4 = k.w2 + k.r2 * b2;
      return verified_scheme<Rational>(name, {1 - b2 - b3 - b4 - b5, b2, b3, b4, b5}, {0, c2, c3, c4, c5},
                                       prov + ", b2 = " + b2.to_string());
    }
    const ExtFloat& b2 = *root.approx;
    const ExtFloat b3 = lift(k.w1, b2) + lift(k.r1, b2) * b2;
    const ExtFloat b4 = lift(k.w2, b2) + lift(k.r2, b2) * b2;
    const ExtFloat b5x = lift(b5, b2);
    std::vector<ExtFloat> c = lifted(std::vector<Rational>{0, c2, c3, c4, c5}, b2);
    return verified_scheme<ExtFloat>(name, {lift(Rational(1), b2) - b2 - b3 - b4 - b5x, b2, b3, b4, b5x}, c,
                                     prov + ", b2 = " + b2.to_string(20) + " (irrational)");
  };
  return collect(solve_quadratic(k.C[2], k.C[1], k.C[0], bits), base, include_irrational, build);
}

}  // namespace lsrk

// lsrk: command-line front end for the low-storage Runge-Kutta library.
//
// Exit status: 0 success, 1 a check or validation failed, 2 usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "lsrk/conditions.hpp"
#include "lsrk/construct.hpp"
#include "lsrk/integrate.hpp"
#include "lsrk/refine.hpp"
#include "lsrk/registry.hpp"
#include "lsrk/scheme_io.hpp"
#include "lsrk/search.hpp"
#include "lsrk/stability.hpp"

using namespace lsrk;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A check reported failure; the message has already been printed.
struct CheckFailed {};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty entry in list '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

Rational rational_arg(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": expected a rational p/q, got '" + text + "'");
  }
}

std::vector<Rational> rational_list(const std::string& text, const std::string& flag) {
  std::vector<Rational> out;
  for (const auto& item : split_csv(text)) out.push_back(rational_arg(item, flag));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + to_text(x);
  return out;
}

template <class T>
std::string tableau_text(const ButcherTableau<T>& t) {
  std::string out = "c = " + join(t.c_values()) + "\n";
  for (int i = 2; i <= t.stages(); ++i)
    out += "a[" + std::to_string(i) + "] = " + join(t.a_rows()[static_cast<std::size_t>(i - 2)]) + "\n";
  return out + "b = " + join(t.b_values()) + "\n";
}

template <class T>
std::string alpha_text(const AlphaForm<T>& f) {
  std::string out = "c = " + join(f.c_values()) + "\n";
  for (int i = 2; i <= f.stages(); ++i)
    out += "alpha[" + std::to_string(i) + "] = " + join(f.alpha_rows()[static_cast<std::size_t>(i - 2)]) + "\n";
  return out + "beta = " + join(f.beta_values()) + "\n";
}

template <class T>
std::string lowstorage_text(const LowStorageForm<T>& f) {
  std::string out;
  for (int i = 1; i <= f.stages(); ++i) out += "A" + std::to_string(i) + " = " + to_text(f.A(i)) + "\n";
  for (int i = 1; i <= f.stages(); ++i) out += "B" + std::to_string(i) + " = " + to_text(f.B(i)) + "\n";
  return out;
}

template <class T>
std::string residual_lines(const ResidualReport<T>& r) {
  std::string out;
  for (const auto& e : r.entries) out += e.id + " " + to_text(e.value) + "\n";
  return out;
}

// ---- subcommands ----------------------------------------------------------

struct CheckArgs {
  std::string scheme;
  int order = 3;
  bool two_n = false;
};

template <class T>
bool check_forms(const SchemeForms<T>& f, const CheckArgs& a) {
  const auto t = tableau_of(f);
  bool ok = true;
  const auto orders = order_residuals(t, a.order);
  std::cout << residual_lines(orders);
  for (const auto& e : orders.entries) ok = ok && negligible(e.value);
  if (a.two_n) {
    const auto tn = two_n_residuals(t);
    std::cout << residual_lines(tn);
    for (const auto& e : tn.entries) ok = ok && negligible(e.value);
    const auto cls = is_two_n_storage(t);
    if (!cls.ok) {
      std::cerr << "not 2N-storage: " << cls.reason << "\n";
      ok = false;
    }
  }
  return ok;
}

void run_check(const CheckArgs& a) {
  const auto scheme = resolve_scheme(a.scheme);
  const bool ok = std::visit([&](const auto& f) { return check_forms(f, a); }, scheme.forms_variant());
  if (!ok) {
    std::cerr << scheme.name() << ": check failed\n";
    throw CheckFailed{};
  }
  std::cout << (scheme.number_kind() == NumberKind::rational ? "all residuals zero\n"
                                                             : "all residuals negligible at working precision\n");
}

struct ConvertArgs {
  std::string scheme;
  std::string to;
  bool legacy = false;
  std::string out;
};

template <class T>
std::string convert_forms(const Scheme& scheme, const SchemeForms<T>& f, const ConvertArgs& a) {
  const auto t = tableau_of(f);
  if (a.legacy) {
    if (a.to != "lowstorage") throw UsageError("--legacy-williamson applies to --to lowstorage only");
    const auto legacy = legacy_williamson(t);
    const auto back = lowstorage_to_a(legacy);
    bool same = true;
    for (int i = 2; i <= t.stages() + 1 && same; ++i)
      for (int j = 1; j < i && same; ++j) same = nearly_equal(back.a(i, j), t.a(i, j));
    if (!same) {
      std::cerr << "warning: legacy Williamson coefficients do not round-trip; they encode a different tableau:\n"
                << tableau_text(back);
      const auto r = order_residuals(back, 3);
      for (const auto& e : r.entries)
        if (!negligible(e.value)) std::cerr << "warning: that tableau violates " << e.id << " (residual " << to_text(e.value) << ")\n";
    }
    if (!a.out.empty()) {
      SchemeForms<T> forms;
      forms.lowstorage = legacy;
      save_scheme(Scheme(scheme.name() + "-legacy", scheme.order(), forms, "legacy Williamson mapping of " + scheme.name()), a.out);
      return "";
    }
    return lowstorage_text(legacy);
  }
  if (a.to == "alpha") {
    if (!a.out.empty()) throw UsageError("the alpha form has no file format; omit --out");
    return alpha_text(a_to_alpha(t));
  }
  SchemeForms<T> forms;
  forms.tableau = t;
  if (a.to == "lowstorage") forms.lowstorage = lowstorage_of(f);
  if (!a.out.empty()) {
    save_scheme(Scheme(scheme.name(), scheme.order(), forms, scheme.provenance()), a.out);
    return "";
  }
  return a.to == "a" ? tableau_text(t) : lowstorage_text(*forms.lowstorage);
}

void run_convert(const ConvertArgs& a) {
  if (a.to != "a" && a.to != "alpha" && a.to != "lowstorage") throw UsageError("--to must be a, alpha or lowstorage");
  const auto scheme = resolve_scheme(a.scheme);
  std::cout << std::visit([&](const auto& f) { return convert_forms(scheme, f, a); }, scheme.forms_variant());
}

// Highest p <= 4 whose order conditions all hold exactly.
int exact_order(const ButcherTableau<Rational>& t) {
  int p = 0;
  while (p < 4 && order_residuals(t, p + 1).all_zero()) ++p;
  return p;
}

Scheme complete_scheme(const std::string& name, ButcherTableau<Rational> t, const std::string& provenance) {
  const int order = exact_order(t);
  SchemeForms<Rational> forms;
  auto cls = is_two_n_storage(t);
  forms.tableau = std::move(t);
  if (cls.ok) {
    forms.lowstorage = std::move(cls.form);
  } else {
    std::cerr << "note: not a 2N-storage method (" << cls.reason << "); writing the tableau only\n";
  }
  return Scheme(name, order, std::move(forms), provenance);
}

void emit_scheme(const Scheme& s, const std::string& out) {
  if (out.empty()) {
    std::cout << scheme_to_json(s);
  } else {
    save_scheme(s, out);
    std::cout << out << "\n";
  }
}

void emit_solutions(const SolveResult& r, const std::string& out_dir) {
  std::cerr << "b2 equation: " << to_string(r.roots.kind) << "\n";
  for (const auto& d : r.diagnostics) std::cerr << "note: " << d << "\n";
  for (const auto& s : r.schemes) {
    if (out_dir.empty()) {
      std::cout << scheme_to_json(s);
    } else {
      std::filesystem::create_directories(out_dir);
      const auto path = std::filesystem::path(out_dir) / scheme_file_name(s.name());
      save_scheme(s, path);
      std::cout << path.string() << "\n";
    }
  }
  if (r.schemes.empty()) throw CheckFailed{};
}

struct IntegrateArgs {
  std::string scheme;
  std::string problem;
  std::string lambda = "-1";
  std::string h_list;
  std::string csv;
};

void run_integrate(const IntegrateArgs& a) {
  const auto scheme = resolve_scheme(a.scheme);
  const auto problem = make_problem(parse_problem(a.problem), rational_arg(a.lambda, "--lambda").to_double());
  const auto curve = error_curve(scheme, problem, rational_list(a.h_list, "--h-list"));
  write_text(a.csv, error_curve_csv(curve));
  try {
    std::cerr << "fitted order " << convergence_order(curve) << "\n";
  } catch (const EstimationError& e) {
    std::cerr << "fitted order unavailable: " << e.what() << "\n";
  }
}

struct StabilityArgs {
  std::string scheme, re, im, format, out;
  int nx = 0, ny = 0;
};

void run_stability(const StabilityArgs& a) {
  if (a.format != "csv" && a.format != "pgm") throw UsageError("--format must be csv or pgm");
  const auto scheme = resolve_scheme(a.scheme);
  const auto r = stability_region(scheme, parse_interval(a.re), parse_interval(a.im), a.nx, a.ny);
  write_text(a.out, a.format == "csv" ? boundary_csv(r) : raster_pgm(r));
  std::cerr << "inside area " << r.inside_area() << "\n";
}

struct VerifyArgs {
  std::string scheme;
  int order = 4;
  int bits = ExtFloat::kRefineBits;
};

void run_verify(const VerifyArgs& a) {
  const auto scheme = resolve_scheme(a.scheme);
  const auto r = residuals_extended(scheme, a.order, a.bits);
  const std::string note = "  (" + std::to_string(a.bits) + " bits)\n";
  for (const auto& e : r.entries) std::cout << e.id << " " << e.value.to_string(6) << note;
  std::cout << "max " << r.max_abs.to_string(6) << note;
}

struct RefineArgs {
  std::string scheme;
  std::vector<std::string> pins;
  int order = 4;
  int bits = ExtFloat::kRefineBits;
  std::string out;
};

void run_refine(const RefineArgs& a) {
  const auto scheme = resolve_scheme(a.scheme);
  const auto start = std::visit(
      [&](const auto& f) {
        const auto L = lowstorage_of(f);
        return map_coefficients<ExtFloat>(L, [&](const auto& x) { return ExtFloat::parse(to_text(x), a.bits); });
      },
      scheme.forms_variant());
  std::map<std::string, ExtFloat> pins;
  for (const auto& p : a.pins) {
    const auto eq = p.find('=');
    const std::string name = p.substr(0, eq);
    try {
      pins.emplace(name, eq == std::string::npos ? parameter_value(start, name)
                                                 : ExtFloat::parse(p.substr(eq + 1), a.bits));
    } catch (const std::invalid_argument& e) {
      throw UsageError("--pin " + p + ": " + e.what());
    }
  }
  const auto r = newton_refine(start, pins, a.order, a.bits);
  std::cerr << "iterations " << r.iterations << "\n";
  for (std::size_t k = 0; k < r.history.size(); ++k) std::cerr << "  max residual " << r.history[k].to_string(6) << "\n";
  if (a.out.empty()) {
    std::cout << lowstorage_text(r.form);
    return;
  }
  SchemeForms<ExtFloat> forms;
  forms.lowstorage = r.form;
  forms.tableau = lowstorage_to_a(r.form);
  save_scheme(Scheme(scheme.name() + "-refined", scheme.order(), forms, "Newton refinement of " + scheme.name()), a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct, convert, check and exercise 2N-storage Runge-Kutta schemes"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "order and 2N-storage residuals");
  c->add_option("--scheme", check.scheme, "registry name or scheme file")->required();
  c->add_option("--order", check.order, "order 1..4")->required()->check(CLI::Range(1, 4));
  c->add_flag("--two-n", check.two_n, "also check the 2N-storage constraints");

  ConvertArgs convert;
  auto* cv = app.add_subcommand("convert", "convert between a-, alpha- and A-forms");
  cv->add_option("--scheme", convert.scheme)->required();
  cv->add_option("--to", convert.to, "a | alpha | lowstorage")->required();
  cv->add_flag("--legacy-williamson", convert.legacy, "use the historical (incorrect for b_i = 0) mapping");
  cv->add_option("--out", convert.out, "write a scheme file instead of printing");

  std::string derive_b, derive_c, derive_out;
  auto* dv = app.add_subcommand("derive", "full 2N-storage scheme from weights b and nodes c");
  dv->add_option("--b", derive_b, "comma-separated rationals")->required();
  dv->add_option("--c", derive_c, "comma-separated rationals")->required();
  dv->add_option("--out", derive_out);

  std::string s43[3], s43_dir;
  auto* s4 = app.add_subcommand("solve43", "closed-form (4,3) solutions");
  s4->add_option("--c2", s43[0])->required();
  s4->add_option("--c3", s43[1])->required();
  s4->add_option("--c4", s43[2])->required();
  s4->add_option("--out-dir", s43_dir);

  std::string sp_case, sp_p1, sp_p2, sp_out;
  auto* sp = app.add_subcommand("solve43-special", "(4,3) special cases");
  sp->add_option("--case", sp_case, "b2zero | b3zero | c2eqc3 | c3eqc4")->required();
  sp->add_option("--p1", sp_p1)->required();
  sp->add_option("--p2", sp_p2)->required();
  sp->add_option("--out", sp_out);

  std::string s53[5], s53_dir;
  auto* s5 = app.add_subcommand("solve53", "closed-form (5,3) solutions");
  s5->add_option("--c2", s53[0])->required();
  s5->add_option("--c3", s53[1])->required();
  s5->add_option("--c4", s53[2])->required();
  s5->add_option("--c5", s53[3])->required();
  s5->add_option("--b5", s53[4])->required();
  s5->add_option("--out-dir", s53_dir);

  std::string fam_b, fam_out;
  auto* fm = app.add_subcommand("family-aminus1", "the A_i = -1 family for given weights");
  fm->add_option("--b", fam_b)->required();
  fm->add_option("--out", fam_out);

  int family = 43, max_den = 2, jobs = 1;
  std::string b5_grid, search_dir;
  std::vector<std::string> filters;
  auto* se = app.add_subcommand("search", "grid search over rational parameters");
  se->add_option("--family", family, "43 | 53")->required()->check(CLI::IsMember({43, 53}));
  se->add_option("--max-den", max_den, "largest denominator Q")->required()->check(CLI::Range(2, 1000));
  se->add_option("--b5-grid", b5_grid, "comma-separated b5 values (family 53)");
  se->add_option("--filter", filters, "increasing_nodes | min_weight[=q] | linear_fourth_order | rational_roots_only");
  se->add_option("--jobs", jobs)->check(CLI::Range(1, 256));
  se->add_option("--out-dir", search_dir)->required();

  IntegrateArgs integ;
  auto* in = app.add_subcommand("integrate", "error d(h) on a test problem");
  in->add_option("--scheme", integ.scheme)->required();
  in->add_option("--problem", integ.problem, "1 | 2 | 3 | linear")->required();
  in->add_option("--lambda", integ.lambda, "rate of the linear problem");
  in->add_option("--h-list", integ.h_list, "comma-separated step sizes")->required();
  in->add_option("--csv", integ.csv, "write the curve here instead of standard output");

  StabilityArgs stab;
  auto* st = app.add_subcommand("stability", "absolute stability region");
  st->add_option("--scheme", stab.scheme)->required();
  st->add_option("--re", stab.re, "min:max")->required();
  st->add_option("--im", stab.im, "min:max")->required();
  st->add_option("--nx", stab.nx)->required()->check(CLI::PositiveNumber);
  st->add_option("--ny", stab.ny)->required()->check(CLI::PositiveNumber);
  st->add_option("--format", stab.format, "csv | pgm")->required();
  st->add_option("--out", stab.out)->required();

  VerifyArgs verify;
  auto* vf = app.add_subcommand("verify", "order residuals in extended precision");
  vf->add_option("--scheme", verify.scheme)->required();
  vf->add_option("--order", verify.order)->required()->check(CLI::Range(1, 4));
  vf->add_option("--bits", verify.bits)->required();

  RefineArgs refine;
  auto* rf = app.add_subcommand("refine", "pinned Newton refinement of an A-form");
  rf->add_option("--scheme", refine.scheme)->required();
  rf->add_option("--pin", refine.pins, "NAME=value, or NAME to hold the current value")->required();
  rf->add_option("--order", refine.order)->required()->check(CLI::Range(1, 4));
  rf->add_option("--bits", refine.bits)->required();
  rf->add_option("--out", refine.out);

  auto* rg = app.add_subcommand("registry", "list built-in schemes");
  std::string show;
  rg->add_option("--show", show, "print one scheme as a scheme file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c) run_check(check);
    if (*cv) run_convert(convert);
    if (*dv) {
      const auto t = derive_a_from_bc(rational_list(derive_b, "--b"), rational_list(derive_c, "--c"));
      emit_scheme(complete_scheme("derived", t, "derived from b = (" + derive_b + "), c = (" + derive_c + ")"),
                  derive_out);
    }
    if (*s4) {
      emit_solutions(solve_43(rational_arg(s43[0], "--c2"), rational_arg(s43[1], "--c3"), rational_arg(s43[2], "--c4")),
                     s43_dir);
    }
    if (*sp) {
      Special43 which;
      try {
        which = parse_special43(sp_case);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      emit_scheme(solve_43_special(which, rational_arg(sp_p1, "--p1"), rational_arg(sp_p2, "--p2")), sp_out);
    }
    if (*s5) {
      emit_solutions(solve_53(rational_arg(s53[0], "--c2"), rational_arg(s53[1], "--c3"), rational_arg(s53[2], "--c4"),
                              rational_arg(s53[3], "--c5"), rational_arg(s53[4], "--b5")),
                     s53_dir);
    }
    if (*fm) {
      const auto b = rational_list(fam_b, "--b");
      emit_scheme(complete_scheme("aminus1", family_a_minus_one(b), "A_i = -1 family, b = (" + fam_b + ")"), fam_out);
    }
    if (*se) {
      SearchSpec spec;
      spec.family = family;
      spec.max_denominator = max_den;
      spec.jobs = jobs;
      if (!b5_grid.empty()) spec.b5_grid = rational_list(b5_grid, "--b5-grid");
      for (const auto& f : filters) {
        try {
          add_filter(spec.filters, f);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      if (family == 53 && spec.b5_grid.empty()) throw UsageError("--family 53 needs --b5-grid");
      const auto result = search(spec);
      write_search_results(spec, result, search_dir);
      const auto& k = result.counters;
      std::cout << "attempted " << k.attempted << "\nadmissible " << k.admissible << "\nrational_root_hits "
                << k.rational_hits << "\nsolved " << k.solved << "\nsurvivors " << k.survivors << "\nunique "
                << result.schemes.size() << "\n";
      for (const auto& s : result.schemes) std::cout << s.name() << "\n";
    }
    if (*in) run_integrate(integ);
    if (*st) run_stability(stab);
    if (*vf) run_verify(verify);
    if (*rf) run_refine(refine);
    if (*rg) {
      if (!show.empty()) {
        std::cout << scheme_to_json(registry_get(show));
      } else {
        for (const auto& name : registry_names()) {
          const auto s = registry_get(name);
          std::cout << name << "\t" << s.stages() << " stages, order " << s.order() << ", "
                    << to_string(s.number_kind()) << "\t" << s.provenance() << "\n";
        }
      }
    }
  } catch (const CheckFailed&) {
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& h : e.history()) std::cerr << "  max residual " << h << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

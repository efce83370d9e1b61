#include "lsrk/search.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>

#include "lsrk/conditions.hpp"
#include "lsrk/construct.hpp"
#include "lsrk/scheme_io.hpp"

namespace lsrk {
namespace {

template <class T>
bool passes(const SchemeForms<T>& forms, const SearchFilters& f) {
  const auto& t = *forms.tableau;
  if (f.increasing_nodes) {
    for (int i = 2; i <= t.stages(); ++i)
      if (!(t.c(i) > t.c(i - 1))) return false;
  }
  if (f.min_weight) {
    const T bound = lift(*f.min_weight, t.zero());
    for (const auto& b : t.b_values())
      if (b < bound) return false;
  }
  if (f.linear_fourth_order) {
    const auto gamma = linear_coeffs(t);
    if (gamma.size() < 4 || !negligible(gamma[3] - lift(Rational(1, 24), t.zero()))) return false;
  }
  return true;
}

bool passes(const Scheme& s, const SearchFilters& f) {
  return std::visit([&](const auto& forms) { return passes(forms, f); }, s.forms_variant());
}

struct Partial {
  std::vector<Scheme> schemes;
  SearchCounters counters;
};

void record(Partial& out, const SolveResult& r, const SearchFilters& filters) {
  ++out.counters.admissible;
  if (!r.roots.exact.empty()) ++out.counters.rational_hits;
  for (const auto& s : r.schemes) {
    ++out.counters.solved;
    if (passes(s, filters)) {
      ++out.counters.survivors;
      out.schemes.push_back(s);
    }
  }
}

// Every tuple whose first parameter is grid[i0].
Partial search_slice(const SearchSpec& spec, const std::vector<Rational>& grid, std::size_t i0) {
  Partial out;
  const bool increasing = spec.filters.increasing_nodes;
  const bool irrational = !spec.filters.rational_roots_only;
  const Rational& c2 = grid[i0];
  const std::size_t n = grid.size();
  auto next_start = [&](std::size_t i) { return increasing ? i + 1 : 0; };
  for (std::size_t i1 = next_start(i0); i1 < n; ++i1) {
    if (i1 == i0) continue;
    for (std::size_t i2 = next_start(i1); i2 < n; ++i2) {
      if (i2 == i0 || i2 == i1) continue;
      if (spec.family == 43) {
        ++out.counters.attempted;
        try {
          record(out, solve_43(c2, grid[i1], grid[i2], ExtFloat::kQuadraticBits, irrational), spec.filters);
        } catch (const SpecialCaseError&) {
        }
        continue;
      }
      for (std::size_t i3 = next_start(i2); i3 < n; ++i3) {
        if (i3 == i0 || i3 == i1 || i3 == i2) continue;
        for (const auto& b5 : spec.b5_grid) {
          ++out.counters.attempted;
          try {
            record(out, solve_53(c2, grid[i1], grid[i2], grid[i3], b5, ExtFloat::kQuadraticBits, irrational),
                   spec.filters);
          } catch (const SpecialCaseError&) {
          }
        }
      }
    }
  }
  return out;
}

bool same_coefficients(const Scheme& x, const Scheme& y) {
  if (x.number_kind() != y.number_kind()) return false;
  if (x.number_kind() == NumberKind::rational) return x.rational().tableau == y.rational().tableau;
  return x.decimal().tableau == y.decimal().tableau;
}

}  // namespace

std::vector<Rational> farey_grid(int max_denominator, const RationalRange& range) {
  if (max_denominator < 1) throw std::invalid_argument("max denominator must be at least 1");
  std::vector<Rational> out;
  const long lo = static_cast<long>(std::floor(range.lo.to_double())) - 1;
  const long hi = static_cast<long>(std::ceil(range.hi.to_double())) + 1;
  for (long q = 1; q <= max_denominator; ++q) {
    for (long p = lo * q; p <= hi * q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Rational x(p, q);
      if (range.contains(x)) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void add_filter(SearchFilters& filters, const std::string& text) {
  if (text == "increasing_nodes") {
    filters.increasing_nodes = true;
  } else if (text == "linear_fourth_order") {
    filters.linear_fourth_order = true;
  } else if (text == "rational_roots_only") {
    filters.rational_roots_only = true;
  } else if (text == "min_weight") {
    filters.min_weight = Rational(-3, 8);
  } else if (text.rfind("min_weight=", 0) == 0) {
    filters.min_weight = Rational::parse(text.substr(11));
  } else {
    throw std::invalid_argument("unknown filter '" + text +
                                "' (expected increasing_nodes, min_weight[=q], linear_fourth_order, "
                                "rational_roots_only)");
  }
}

SearchResult search(const SearchSpec& spec) {
  if (spec.family != 43 && spec.family != 53) throw std::invalid_argument("family must be 43 or 53");
  if (spec.max_denominator < 2) throw std::invalid_argument("max denominator must be at least 2");
  if (spec.family == 53 && spec.b5_grid.empty()) throw std::invalid_argument("family 53 needs a b5 grid");
  if (spec.jobs < 1) throw std::invalid_argument("jobs must be at least 1");

  const auto grid = farey_grid(spec.max_denominator, spec.c_range);
  std::vector<Partial> slices(grid.size());
  const auto jobs = static_cast<std::size_t>(spec.jobs);
  auto worker = [&](std::size_t w) {
    for (std::size_t i = w; i < grid.size(); i += jobs) slices[i] = search_slice(spec, grid, i);
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  SearchResult out;
  for (auto& p : slices) {
    out.counters.attempted += p.counters.attempted;
    out.counters.admissible += p.counters.admissible;
    out.counters.rational_hits += p.counters.rational_hits;
    out.counters.solved += p.counters.solved;
    out.counters.survivors += p.counters.survivors;
    for (auto& s : p.schemes) {
      const bool dup = std::any_of(out.schemes.begin(), out.schemes.end(),
                                   [&](const Scheme& kept) { return same_coefficients(kept, s); });
      if (!dup) out.schemes.push_back(std::move(s));
    }
  }
  return out;
}

std::string scheme_file_name(const std::string& scheme_name) {
  std::string out = scheme_name;
  std::replace(out.begin(), out.end(), '/', 'd');
  return out + ".json";
}

void write_search_results(const SearchSpec& spec, const SearchResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& s : result.schemes) save_scheme(s, dir / scheme_file_name(s.name()));
  std::ofstream summary(dir / "summary.txt");
  summary << "family " << spec.family << "\n"
          << "max_denominator " << spec.max_denominator << "\n"
          << "attempted " << result.counters.attempted << "\n"
          << "admissible " << result.counters.admissible << "\n"
          << "rational_root_hits " << result.counters.rational_hits << "\n"
          << "solved " << result.counters.solved << "\n"
          << "survivors " << result.counters.survivors << "\n"
          << "unique " << result.schemes.size() << "\n";
  for (const auto& s : result.schemes) summary << s.name() << "\n";
  if (!summary) throw Error("failed writing " + (dir / "summary.txt").string());
}

}  // namespace lsrk

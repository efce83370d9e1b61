#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lsrk/rational.hpp"
#include "lsrk/scheme.hpp"

namespace lsrk {

struct RationalRange {
  Rational lo{0};
  Rational hi{1};
  bool lo_open = true;
  bool hi_open = false;

  bool contains(const Rational& x) const {
    return (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
  }
};

struct SearchFilters {
  bool increasing_nodes = false;
  std::optional<Rational> min_weight;  // every b_i >= bound
  bool linear_fourth_order = false;    // gamma_4 = 1/24
  bool rational_roots_only = false;
};

struct SearchSpec {
  int family = 43;  // 43 or 53
  int max_denominator = 2;
  RationalRange c_range;
  SearchFilters filters;
  std::vector<Rational> b5_grid;  // required for family 53
  int jobs = 1;
};

struct SearchCounters {
  std::uint64_t attempted = 0;      // parameter tuples visited
  std::uint64_t admissible = 0;     // tuples the closed-form solver accepted
  std::uint64_t rational_hits = 0;  // tuples whose b2 equation has rational roots
  std::uint64_t solved = 0;         // schemes built and verified
  std::uint64_t survivors = 0;      // schemes passing every filter
};

struct SearchResult {
  std::vector<Scheme> schemes;
  SearchCounters counters;
};

/// Reduced fractions p/q with 1 <= q <= max_denominator inside `range`, ascending.
std::vector<Rational> farey_grid(int max_denominator, const RationalRange& range);

/// Parses a filter name: "increasing_nodes", "min_weight" or
/// "min_weight=<rational>", "linear_fourth_order", "rational_roots_only".
void add_filter(SearchFilters& filters, const std::string& text);

/// Grid search over the free parameters of the closed-form solvers. Output
/// is ordered by (parameters, b2) and does not depend on `jobs`.
SearchResult search(const SearchSpec& spec);

/// One scheme file per result plus summary.txt with the counters.
void write_search_results(const SearchSpec& spec, const SearchResult& result, const std::filesystem::path& dir);

/// File-system friendly version of a scheme name ('/' becomes 'd').
std::string scheme_file_name(const std::string& scheme_name);

}  // namespace lsrk

#include "doctest.h"
#include "lsrk/conditions.hpp"
#include "lsrk/construct.hpp"
#include "lsrk/convert.hpp"
#include "lsrk/registry.hpp"

using namespace lsrk;

namespace {

using R = Rational;

const ButcherTableau<R>& tableau_of_scheme(const Scheme& s) { return *s.rational().tableau; }

ButcherTableau<R> registry_tableau(const std::string& name) { return *registry_get(name).rational().tableau; }

bool contains_tableau(const SolveResult& r, const ButcherTableau<R>& t) {
  for (const auto& s : r.schemes)
    if (s.number_kind() == NumberKind::rational && tableau_of_scheme(s) == t) return true;
  return false;
}

}  // namespace

TEST_CASE("b,c -> a reproduces the registry tableaux") {
  for (const auto& name : {"43-1", "43-2", "43-3", "43-4", "53-1", "53-2", "53-3", "53-4"}) {
    const auto t = registry_tableau(name);
    CHECK_MESSAGE(derive_a_from_bc(t.b_values(), t.c_values()) == t, name);
    CHECK_MESSAGE(derive_AB_from_bc(t.b_values(), t.c_values()) == a_to_lowstorage(t), name);
  }
}

TEST_CASE("b,c -> a rejects undetermined columns") {
  // classical RK4: b_1 + b_2 = 1/2 = c_2
  try {
    derive_a_from_bc<R>({R(1, 6), R(1, 3), R(1, 3), R(1, 6)}, {R(0), R(1, 2), R(1, 2), R(1)});
    FAIL("expected a special case");
  } catch (const SpecialCaseError& e) {
    CHECK(std::string(e.what()).find("S_2 = c_2") != std::string::npos);
  }
  CHECK_THROWS_AS(derive_a_from_bc<R>({R(1)}, {R(1, 2)}), ValidationError);
  CHECK_THROWS_AS(derive_a_from_bc<R>({R(1), R(0)}, {R(0)}), ValidationError);
}

TEST_CASE("A = -1 family") {
  const std::vector<R> b{R(1, 4), R(1, 3), R(5, 12)};
  const auto t = family_a_minus_one(b);
  const auto f = a_to_lowstorage(t);
  CHECK(f.A(2) == R(-1));
  CHECK(f.A(3) == R(-1));
  CHECK(t.a(3, 1) == R(1, 4) - R(5, 12));
  CHECK(t.a(3, 2) == R(1, 3) + R(5, 12));
  CHECK_THROWS_AS(family_a_minus_one<R>({R(1)}), ValidationError);
}

TEST_CASE("solve_43 returns the registry schemes") {
  struct Case {
    const char* name;
    R c2, c3, c4;
  };
  for (const auto& k : {Case{"43-1", R(1, 4), R(7, 12), R(4, 5)}, Case{"43-2", R(1, 5), R(3, 5), R(13, 15)},
                        Case{"43-3", R(2, 15), R(2, 5), R(4, 5)}, Case{"43-4", R(13, 28), R(4, 7), R(37, 42)}}) {
    const auto r = solve_43(k.c2, k.c3, k.c4);
    CHECK(r.roots.kind == RootKind::two_rational);
    CHECK_MESSAGE(contains_tableau(r, registry_tableau(k.name)), k.name);
    for (const auto& s : r.schemes) {
      CHECK(order_residuals(tableau_of_scheme(s), 3).all_zero());
      CHECK(two_n_residuals(tableau_of_scheme(s)).all_zero());
    }
  }
  const auto r = solve_43(R(1, 4), R(7, 12), R(4, 5));
  CHECK(tableau_of_scheme(r.schemes.at(0)).b(2) == R(1, 6));
  CHECK(r.schemes.at(0).name() == "43-1/4_7/12_4/5-root0");
}

TEST_CASE("solve_43 with irrational roots") {
  const auto r = solve_43(R(1, 3), R(2, 3), R(1));
  CHECK(r.roots.kind == RootKind::two_real_irrational);
  REQUIRE(r.schemes.size() == 2);
  for (const auto& s : r.schemes) {
    CHECK(s.number_kind() == NumberKind::decimal);
    const auto& t = *s.decimal().tableau;
    for (const auto& e : order_residuals(t, 3).entries) CHECK(negligible(e.value));
  }
  CHECK(solve_43(R(1, 3), R(2, 3), R(1), ExtFloat::kQuadraticBits, false).schemes.empty());
}

TEST_CASE("special cases of the (4,3) family") {
  const auto s = solve_43_special(Special43::b3zero, R(1, 2), R(3, 4));
  CHECK(tableau_of_scheme(s) == registry_tableau("43-b3zero"));
  for (auto which : {Special43::b2zero, Special43::b3zero, Special43::c2eqc3, Special43::c3eqc4})
    CHECK(parse_special43(to_string(which)) == which);
  CHECK_THROWS_AS(parse_special43("b4zero"), std::invalid_argument);
}

TEST_CASE("special cases satisfy the conditions when they exist") {
  int built = 0;
  for (auto which : {Special43::b2zero, Special43::b3zero, Special43::c2eqc3, Special43::c3eqc4}) {
    for (const auto& p1 : {R(1, 5), R(1, 3), R(1, 2), R(2, 3)}) {
      for (const auto& p2 : {R(1, 4), R(3, 5), R(3, 4), R(5, 6), R(1)}) {
        try {
          const auto s = solve_43_special(which, p1, p2);
          const auto& t = tableau_of_scheme(s);
          CHECK(order_residuals(t, 3).all_zero());
          CHECK(is_two_n_storage(t).ok);
          ++built;
        } catch (const SpecialCaseError&) {
        }
      }
    }
  }
  CHECK(built > 10);
}

TEST_CASE("solve_53 returns the registry schemes") {
  struct Case {
    const char* name;
    R c2, c3, c4, c5, b5;
  };
  for (const auto& k : {Case{"53-1", R(1, 4), R(8, 15), R(12, 17), R(5, 6), R(10, 47)},
                        Case{"53-2", R(1, 4), R(4, 7), R(2, 3), R(13, 14), R(7, 43)},
                        Case{"53-3", R(2, 9), R(1, 2), R(13, 18), R(9, 10), R(25, 192)},
                        Case{"53-4", R(1, 4), R(1, 2), R(3, 4), R(1), R(1, 9)}}) {
    CHECK(cubic_53(k.c2, k.c3, k.c4, k.c5, k.b5)[3].is_zero());
    const auto r = solve_53(k.c2, k.c3, k.c4, k.c5, k.b5);
    CHECK_MESSAGE(contains_tableau(r, registry_tableau(k.name)), k.name);
  }
}

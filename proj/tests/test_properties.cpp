#include "doctest.h"
#include "properties.hpp"

using namespace lsrk;

TEST_CASE("recursive and closed b,c -> a formulas agree") { CHECK(test::recursive_vs_direct(1000, 101) == ""); }

TEST_CASE("form conversions are bijections") { CHECK(test::round_trips(1000, 102) == ""); }

TEST_CASE("A = -1 family converts to A_i = -1") { CHECK(test::a_minus_one_family(500, 103) == ""); }

TEST_CASE("constraint evaluator matches the transcription") { CHECK(test::form_two_matches_oracle(500, 104) == ""); }

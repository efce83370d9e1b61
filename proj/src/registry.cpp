#include "lsrk/registry.hpp"

#include <filesystem>
#include <functional>
#include <map>

#include "lsrk/scheme_io.hpp"

namespace lsrk {
namespace {

using Strings = std::vector<std::string>;

std::vector<Rational> q(const Strings& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) out.push_back(Rational::parse(x));
  return out;
}

TriangularRows<Rational> rows(const std::vector<Strings>& xs) {
  TriangularRows<Rational> out;
  for (const auto& r : xs) out.push_back(q(r));
  return out;
}

// Tableau plus, when given, the printed A-form; both are validated.
Scheme rational_scheme(const std::string& name, int order, const Strings& c, const std::vector<Strings>& a,
                       const Strings& b, const Strings& A, const Strings& B, const std::string& provenance) {
  SchemeForms<Rational> forms;
  forms.tableau.emplace(q(c), rows(a), q(b));
  if (!A.empty()) forms.lowstorage.emplace(q(A), q(B), q(c));
  return Scheme(name, order, std::move(forms), provenance);
}

Scheme make_43_b3zero() {
  return rational_scheme("43-b3zero", 3, {"0", "1/2", "5/9", "3/4"},
                         {{"1/2"}, {"2/9", "1/3"}, {"3/176", "51/88", "27/176"}}, {"2/9", "1/3", "0", "4/9"},
                         {"0", "-5/6", "130/81", "-243/704"}, {"1/2", "1/3", "27/176", "4/9"},
                         "(4,3) 2N-storage scheme with b3 = 0");
}

Scheme make_53_b4zero() {
  return rational_scheme("53-b4zero", 3, {"0", "1/3", "1/2", "7/9", "1"},
                         {{"1/3"}, {"1/8", "3/8"}, {"1/18", "1/2", "2/9"}, {"81/328", "51/328", "-16/41", "81/82"}},
                         {"1/18", "1/2", "2/9", "0", "2/9"}, {"0", "-5/9", "9/16", "-452/729", "-729/164"},
                         {"1/3", "3/8", "2/9", "81/82", "2/9"}, "(5,3) 2N-storage scheme with b4 = 0");
}

Scheme make_43_1() {
  return rational_scheme("43-1", 3, {"0", "1/4", "7/12", "4/5"},
                         {{"1/4"}, {"-1/12", "2/3"}, {"12/25", "-23/50", "39/50"}}, {"1/6", "1/6", "9/26", "25/78"},
                         {"0", "-1/2", "-13/9", "-846/625"}, {"1/4", "2/3", "39/50", "25/78"},
                         "(4,3) 2N-storage scheme, c = (1/4, 7/12, 4/5); fourth order on linear problems");
}

Scheme make_43_2() {
  return rational_scheme("43-2", 3, {"0", "1/5", "3/5", "13/15"},
                         {{"1/5"}, {"-3/20", "3/4"}, {"143/540", "-5/36", "20/27"}}, {"-1/9", "2/3", "5/72", "3/8"},
                         {"0", "-7/15", "-6/5", "-145/81"}, {"1/5", "3/4", "20/27", "3/8"},
                         "(4,3) 2N-storage scheme, c = (1/5, 3/5, 13/15); fourth order on linear problems");
}

Scheme make_43_3() {
  return rational_scheme("43-3", 3, {"0", "2/15", "2/5", "4/5"},
                         {{"2/15"}, {"-7/20", "3/4"}, {"169/180", "-5/4", "10/9"}}, {"3/8", "-3/8", "5/8", "3/8"},
                         {"0", "-29/45", "-9/5", "-35/27"}, {"2/15", "3/4", "10/9", "3/8"},
                         "(4,3) 2N-storage scheme, c = (2/15, 2/5, 4/5); fourth order on linear problems");
}

Scheme make_43_4() {
  return rational_scheme("43-4", 3, {"0", "13/28", "4/7", "37/42"},
                         {{"13/28"}, {"-32/91", "12/13"}, {"1091/2184", "-14/351", "91/216"}},
                         {"5/26", "4/13", "7/26", "3/13"}, {"0", "-99/112", "-16/7", "-427/648"},
                         {"13/28", "12/13", "91/216", "3/13"},
                         "(4,3) 2N-storage scheme, c = (13/28, 4/7, 37/42); fourth order on linear problems");
}

Scheme make_53_1() {
  return rational_scheme(
      "53-1", 3, {"0", "1/4", "8/15", "12/17", "5/6"},
      {{"1/4"},
       {"-16/225", "136/225"},
       {"832/1005", "-18584/17085", "1100/1139"},
       {"-13213/60300", "13312/15075", "-1875/11792", "289/880"}},
      {"15/94", "8/47", "1025/4136", "867/4136", "10/47"}, {"0", "-17/32", "-9856/5625", "-1127375/329171", "-4913/8800"},
      {"1/4", "136/225", "1100/1139", "289/880", "10/47"},
      "(5,3) 2N-storage scheme, (c2, c3, c4, c5, b5) = (1/4, 8/15, 12/17, 5/6, 10/47)");
}

Scheme make_53_2() {
  return rational_scheme("53-2", 3, {"0", "1/4", "4/7", "2/3", "13/14"},
                         {{"1/4"},
                          {"-8/49", "36/49"},
                          {"163/2394", "3484/10773", "847/3078"},
                          {"2053/11172", "2960/25137", "847/2052", "3/14"}},
                         {"37/258", "220/1161", "847/2322", "6/43", "7/43"},
                         {"0", "-9/16", "-62032/41503", "5929/9234", "-45/98"},
                         {"1/4", "36/49", "847/3078", "3/14", "7/43"},
                         "(5,3) 2N-storage scheme, (c2, c3, c4, c5, b5) = (1/4, 4/7, 2/3, 13/14, 7/43)");
}

Scheme make_53_3() {
  return rational_scheme("53-3", 3, {"0", "2/9", "1/2", "13/18", "9/10"},
                         {{"2/9"},
                          {"-1/8", "5/8"},
                          {"179/360", "-99/200", "18/25"},
                          {"99/1000", "1109/5000", "162/625", "8/25"}},
                         {"1/6", "1/10", "27/80", "17/64", "25/192"}, {"0", "-5/9", "-14/9", "-36/25", "-261/625"},
                         {"2/9", "5/8", "18/25", "8/25", "25/192"},
                         "(5,3) 2N-storage scheme, (c2, c3, c4, c5, b5) = (2/9, 1/2, 13/18, 9/10, 25/192); "
                         "fourth order on linear problems");
}

Scheme make_53_4() {
  return rational_scheme("53-4", 3, {"0", "1/4", "1/2", "3/4", "1"},
                         {{"1/4"}, {"-1/6", "2/3"}, {"1/4", "0", "1/2"}, {"0", "2/5", "1/5", "2/5"}},
                         {"1/9", "2/9", "1/3", "2/9", "1/9"}, {"0", "-5/8", "-4/3", "-3/4", "-8/5"},
                         {"1/4", "2/3", "1/2", "2/5", "1/9"},
                         "(5,3) 2N-storage scheme, (c2, c3, c4, c5, b5) = (1/4, 1/2, 3/4, 1, 1/9); stage 5 "
                         "reaches t + h with second-order weights, giving an embedded (3,2) pair");
}

Scheme make_rk4() {
  return rational_scheme("rk4-classic", 4, {"0", "1/2", "1/2", "1"}, {{"1/2"}, {"0", "1/2"}, {"0", "0", "1"}},
                         {"1/6", "1/3", "1/3", "1/6"}, {}, {}, "classical four-stage fourth-order scheme (not 2N-storage)");
}

Scheme make_64_berland() {
  constexpr int bits = ExtFloat::kRefineBits;
  auto x = [](const Strings& xs) {
    std::vector<ExtFloat> out;
    for (const auto& s : xs) out.push_back(ExtFloat::parse(s, bits));
    return out;
  };
  const auto c = x({"0", "3.291860514560574016139360757085052620500596e-02",
                    "2.493517233431018504774294242339061755717526e-01",
                    "4.669117050548576634478026408182787823664122e-01",
                    "5.820304140439261598301282787623770385763741e-01",
                    "8.472529837826966533345857631306276101828820e-01"});
  const auto A = x({"0", "-7.371013927959100015085736294563710861301655e-01",
                    "-1.634740794340906961222612899974121227203739e+00",
                    "-7.447390037800703313971792823734483498376512e-01",
                    "-1.469897351521944371244484234187043583134644e+00",
                    "-2.813971388035238894872690695659944758090490e+00"});
  const auto B = x({"3.291860514560574016139360757085052620500596e-02",
                    "8.232569981988439778822317874254015260794315e-01",
                    "3.815309489002858170631520216481864120871775e-01",
                    "2.000922131840258454393248810001898523823106e-01",
                    "1.718581042714403494253985915871400632540402e+00", "2.7e-01"});
  SchemeForms<ExtFloat> forms;
  forms.lowstorage.emplace(A, B, c);
  const auto derived = lowstorage_to_a(*forms.lowstorage);
  forms.tableau.emplace(c, derived.a_rows(), derived.b_values());
  return Scheme("64-berland", 4, std::move(forms), "six-stage fourth-order 2N-storage scheme with B6 fixed to 0.27");
}

const std::map<std::string, std::function<Scheme()>>& builders() {
  static const std::map<std::string, std::function<Scheme()>> table = {
      {"43-b3zero", make_43_b3zero}, {"53-b4zero", make_53_b4zero}, {"43-1", make_43_1},
      {"43-2", make_43_2},           {"43-3", make_43_3},           {"43-4", make_43_4},
      {"53-1", make_53_1},           {"53-2", make_53_2},           {"53-3", make_53_3},
      {"53-4", make_53_4},           {"64-berland", make_64_berland}, {"rk4-classic", make_rk4},
  };
  return table;
}

}  // namespace

Scheme registry_get(const std::string& name) {
  const auto& table = builders();
  const auto it = table.find(name);
  if (it == table.end()) throw LookupError("unknown scheme '" + name + "'");
  return it->second();
}

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = {"43-b3zero", "53-b4zero", "43-1", "43-2", "43-3", "43-4",
                                                 "53-1",      "53-2",      "53-3", "53-4", "64-berland", "rk4-classic"};
  return names;
}

Scheme resolve_scheme(const std::string& name_or_path) {
  if (builders().count(name_or_path) != 0) return registry_get(name_or_path);
  if (std::filesystem::exists(name_or_path)) return load_scheme(name_or_path);
  throw LookupError("'" + name_or_path + "' is neither a built-in scheme nor an existing file");
}

}  // namespace lsrk

#pragma once

#include <filesystem>
#include <string>

#include "lsrk/scheme.hpp"

namespace lsrk {

// JSON layout:
//   {"name": "43-1", "order": 3, "number_kind": "rational",
//    "c": ["0", "1/4", ...], "b": [...], "a": [["1/4"], ["-1/12", "2/3"], ...],
//    "A": [...], "B": [...], "provenance": "..."}
// "A", "B" and "provenance" are optional; any other field is rejected.
// Malformed or inconsistent input raises ValidationError naming the field.

std::string scheme_to_json(const Scheme& scheme);
Scheme scheme_from_json(const std::string& text);

void save_scheme(const Scheme& scheme, const std::filesystem::path& path);
Scheme load_scheme(const std::filesystem::path& path);

}  // namespace lsrk

#pragma once

#include <string>
#include <vector>

#include "lsrk/scheme.hpp"

namespace lsrk {

/// Built-in schemes. Throws LookupError for an unknown name.
Scheme registry_get(const std::string& name);

/// All built-in names in a fixed order.
const std::vector<std::string>& registry_names();

/// A registry name, or else the path of a scheme file.
Scheme resolve_scheme(const std::string& name_or_path);

}  // namespace lsrk

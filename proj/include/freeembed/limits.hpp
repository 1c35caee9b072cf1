#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace freeembed {

/// Size caps guarding the exhaustive enumerations.
struct Limits {
  std::size_t max_nc = 12;        // ground size for NC enumeration, |NC(12)| = 208012
  std::size_t max_nc2 = 20;       // ground size for NC2 enumeration, |NC2(20)| = 16796
  std::size_t max_symbolic = 8;   // word length for symbolic moment sums
};

/// Limits after applying a FREEEMBED_MAX_K style override. A value K sets the
/// NC cap and the symbolic cap to K and raises the NC2 cap to at least 2K.
/// Throws ConfigError on a non-numeric or zero value.
Limits limits_with_override(std::string_view max_k);

/// Process-wide defaults, read once from the FREEEMBED_MAX_K environment
/// variable.
const Limits& default_limits();

}  // namespace freeembed

#include "freeembed/limits.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

#include "freeembed/errors.hpp"

namespace freeembed {

Limits limits_with_override(std::string_view max_k) {
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(max_k.data(), max_k.data() + max_k.size(), k);
  if (ec != std::errc{} || ptr != max_k.data() + max_k.size() || k == 0) {
    throw ConfigError("FREEEMBED_MAX_K must be a positive integer, got '" + std::string(max_k) + "'");
  }
  Limits limits;
  limits.max_nc = k;
  limits.max_symbolic = k;
  limits.max_nc2 = std::max(limits.max_nc2, 2 * k);
  return limits;
}

const Limits& default_limits() {
  static const Limits limits = [] {
    const char* env = std::getenv("FREEEMBED_MAX_K");
    return env != nullptr ? limits_with_override(env) : Limits{};
  }();
  return limits;
}

}  // namespace freeembed

// SPDX-License-Identifier: MIT
#include "bregman/settings.hpp"

#include <cstdlib>
#include <string>

#include "bregman/error.hpp"

namespace bregman {

Settings Settings::from_env() {
  Settings s;
  if (const char* v = std::getenv("BREGMAN_GRID_N"); v != nullptr && *v != '\0') {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 3) raise(ErrorCode::InvalidArgument, std::string("bad BREGMAN_GRID_N: ") + v);
    s.grid_n = static_cast<std::size_t>(n);
  }
  return s;
}

}  // namespace bregman

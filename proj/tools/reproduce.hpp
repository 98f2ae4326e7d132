// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bregman/settings.hpp"

namespace bregman::cli {

struct ReproLine {
  std::string label;
  bool pass = false;
  std::string measured;
};

/// Ids accepted by reproduce(), in listing order.
const std::vector<std::string>& example_ids();

/// Runs the checks of one catalog example. Per-point detail goes to `detail`.
/// Throws UnknownExample.
std::vector<ReproLine> reproduce(const std::string& id, const Settings& s, std::ostream& detail);

}  // namespace bregman::cli

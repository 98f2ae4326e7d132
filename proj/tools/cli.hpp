// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bregman::cli {

enum ExitCode : int { kPass = 0, kImplicationFailure = 1, kUsage = 2 };

/// Entry point of the `bregman` command; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g, with inf, -inf and nan spelled out.
std::string format_number(double v);

}  // namespace bregman::cli

// SPDX-License-Identifier: MIT
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bregman::cli::run(args, std::cout, std::cerr);
}

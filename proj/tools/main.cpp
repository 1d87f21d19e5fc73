// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include "parrom/cli/commands.hpp"

int main(int argc, char **argv)
{
  return parrom::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

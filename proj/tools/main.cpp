// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return astkit::cli::main_entry(args, std::getenv("ASTKIT_THREADS"), std::cout, std::cerr);
}

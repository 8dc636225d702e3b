// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "abridge/cli/run.hpp"

int main(int argc, char** argv) { return abridge::cli::main_entry(argc, argv, std::cout, std::cerr); }

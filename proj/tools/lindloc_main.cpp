#include <iostream>

#include "lindloc/cli/commands.hpp"

int main(int argc, char** argv) { return lindloc::cli::run_cli(argc, argv, std::cout, std::cerr); }

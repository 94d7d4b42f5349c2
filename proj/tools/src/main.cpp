#include <iostream>

#include "gips_cli/commands.hpp"

int main(int argc, char** argv) { return gips::cli::run_cli(argc, argv, std::cout, std::cerr); }

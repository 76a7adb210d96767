#include <iostream>

#include "hamflow/cli/commands.hpp"

int main(int argc, char** argv) { return hamflow::cli::run_cli(argc, argv, std::cout, std::cerr); }

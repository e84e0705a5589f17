#include <iostream>

#include "sle/cli/commands.hpp"

int main(int argc, char** argv) { return sle::cli::run_main(argc, argv, std::cout, std::cerr); }

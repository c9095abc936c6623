#include <iostream>

#include "modpl/cli.hpp"

int main(int argc, char** argv) { return modpl::run_command(argc, argv, std::cout, std::cerr); }

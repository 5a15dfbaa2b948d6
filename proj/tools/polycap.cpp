#include <iostream>

#include "polycap/cli.hpp"

int main(int argc, char** argv) { return polycap::cli::main(argc, argv, std::cout, std::cerr); }

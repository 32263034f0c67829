#include <iostream>

#include "ldtk/cli.hpp"

int main(int argc, char** argv) { return ldtk::run_cli(argc, argv, std::cout, std::cerr); }

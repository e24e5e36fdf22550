#include <iostream>

#include "gfvc/cli.hpp"

int main(int argc, char** argv) { return gfvc::cli::run(argc, argv, std::cout, std::cerr); }

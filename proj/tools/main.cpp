#include <iostream>

#include "evenlat/cli.hpp"

int main(int argc, char** argv) { return evenlat::cli_main(argc, argv, std::cout, std::cerr); }

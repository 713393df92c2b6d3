#include <iostream>

#include "polylb/cli.hpp"

int main(int argc, char** argv) { return polylb::cli_main(argc, argv, std::cout, std::cerr); }

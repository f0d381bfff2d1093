#include <iostream>

#include "gapscan/cli.hpp"

int main(int argc, char** argv) { return gapscan::run_cli(argc, argv, std::cout, std::cerr); }

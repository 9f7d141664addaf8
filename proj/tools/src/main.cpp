#include <iostream>

#include "gprobe/cli.hpp"

int main(int argc, char** argv) { return gprobe::cli::run(argc, argv, std::cout, std::cerr); }

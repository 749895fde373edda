#include <iostream>

#include "hcf/cli.hpp"

int main(int argc, char** argv) { return hcf::cli::run(argc, argv, std::cout, std::cerr); }

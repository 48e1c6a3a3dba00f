#include <iostream>

#include "nonrecip/cli.hpp"

int main(int argc, char** argv) { return nonrecip::cli::run(argc, argv, std::cout, std::cerr); }

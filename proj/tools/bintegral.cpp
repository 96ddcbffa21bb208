#include <iostream>

#include "bintegral/cli.hpp"

int main(int argc, char** argv) { return bintegral::cli::run(argc, argv, std::cout, std::cerr); }

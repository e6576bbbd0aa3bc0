#include <iostream>

#include "wald/cli.hpp"

int main(int argc, char** argv) { return wald::cli::run(argc, argv, std::cout, std::cerr); }

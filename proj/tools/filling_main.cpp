#include <iostream>

#include "filling/cli.hpp"

int main(int argc, char** argv) { return filling::cli::run(argc, argv, std::cout, std::cerr); }

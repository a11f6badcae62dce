#include <iostream>

#include "codeweft/cli/cli.hpp"

int main(int argc, char **argv) { return codeweft::cli::run(argc, argv, std::cin, std::cout, std::cerr); }

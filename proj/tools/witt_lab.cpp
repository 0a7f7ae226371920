#include <iostream>

#include "wittlab/cli.hpp"

int main(int argc, char** argv) { return wittlab::cli::run(argc, argv, std::cout, std::cerr); }

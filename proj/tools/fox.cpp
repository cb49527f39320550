#include <iostream>

#include "fox/cli.hpp"

int main(int argc, char** argv) { return fox::cli::run(argc, argv, std::cout, std::cerr); }

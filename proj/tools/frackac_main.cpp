#include <iostream>

#include "frackac/cli.hpp"

int main(int argc, char** argv) { return frackac::cli::run(argc, argv, std::cout, std::cerr); }

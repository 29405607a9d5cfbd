#include "toricsum/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return toricsum::cli::main_entry(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "lcdual/cli.hpp"

int main(int argc, char** argv) { return lcdual::cli::run_cli(argc, argv, std::cout, std::cerr); }

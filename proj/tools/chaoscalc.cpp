#include <iostream>

#include "chaoscalc/cli.hpp"

int main(int argc, char** argv) { return chaoscalc::run_cli(argc, argv, std::cin, std::cout, std::cerr); }

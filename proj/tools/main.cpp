#include "torusfix/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return torusfix::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "hths/cli.hpp"

int main(int argc, char** argv) { return hths::run_cli(argc, argv, std::cout, std::cerr); }

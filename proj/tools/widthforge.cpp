#include <iostream>

#include "widthforge/cli.hpp"

int main(int argc, char** argv) { return widthforge::run_cli(argc, argv, std::cout, std::cerr); }

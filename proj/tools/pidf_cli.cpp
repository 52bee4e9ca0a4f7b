#include <iostream>

#include "pidf/commands.hpp"

int main(int argc, char** argv) { return pidf::run_cli(argc, argv, std::cout, std::cerr); }

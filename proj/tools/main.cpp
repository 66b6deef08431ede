#include "stieltjes/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return stieltjes::run_cli(argc, argv, std::cout, std::cerr); }

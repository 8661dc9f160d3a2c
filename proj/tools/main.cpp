#include <iostream>

#include "hob/cli/price.hpp"

int main(int argc, char** argv) { return hob::run_cli(argc, argv, std::cout, std::cerr); }

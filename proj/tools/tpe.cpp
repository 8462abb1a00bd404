#include <iostream>

#include "tpe/cli.hpp"

int main(int argc, char** argv) { return tpe::run_cli(argc, argv, std::cout, std::cerr); }

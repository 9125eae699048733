#include <iostream>

#include "ppcurve/cli.hpp"

int main(int argc, char** argv) { return ppcurve::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "congrusep/cli.hpp"

int main(int argc, char** argv) { return congrusep::run_cli(argc, argv, std::cout, std::cerr); }

#include "sdimlab/cli.h"

#include <iostream>

int main(int argc, char** argv) { return sdimlab::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "rodbreak/cli.hpp"

int main(int argc, char** argv) { return rodbreak::cli::run(argc, argv, std::cout, std::cerr); }

#include "horolab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return horolab::cli::run(argc, argv, std::cout, std::cerr); }

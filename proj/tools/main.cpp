#include <iostream>

#include "rbcm/cli.hpp"

int main(int argc, char** argv) { return rbcm::cli::run_cli(argc, argv, std::cout, std::cerr); }

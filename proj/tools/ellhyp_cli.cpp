#include <iostream>

#include "ellhyp/cli.hpp"

int main(int argc, char** argv) { return ellhyp::cli::run(argc, argv, std::cout, std::cerr); }

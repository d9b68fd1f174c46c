#include <iostream>

#include "abelcp/cli.hpp"

int main(int argc, char** argv) { return abelcp::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "qpc/cli.hpp"

int main(int argc, char** argv) { return qpc::cli::run(argc, argv, std::cout, std::cerr); }

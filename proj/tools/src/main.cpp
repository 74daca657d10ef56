#include <iostream>

#include "photodet_cli/cli.hpp"

int main(int argc, char** argv) { return photodet::cli::run(argc, argv, std::cout, std::cerr); }

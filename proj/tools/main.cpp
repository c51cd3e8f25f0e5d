#include <iostream>

#include "bsfs/cli.hpp"

int main(int argc, char** argv) { return bsfs::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "subbundle/cli.hpp"

int main(int argc, char** argv) { return subbundle::cli::run(argc, argv, std::cout, std::cerr); }

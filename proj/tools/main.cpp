#include <iostream>

#include "ccls_cli.hpp"

int main(int argc, char** argv) { return ccls::cli::run(argc, argv, std::cout, std::cerr); }

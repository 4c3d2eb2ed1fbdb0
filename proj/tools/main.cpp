#include <iostream>

#include "valironkit/cli.hpp"

int main(int argc, char** argv) { return valironkit::cli::main_entry(argc, argv, std::cout, std::cerr); }

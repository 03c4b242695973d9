#include <iostream>

#include "dbtwell/cli.hpp"

int main(int argc, char** argv) { return dbtwell::cli::run(argc, argv, std::cout, std::cerr); }

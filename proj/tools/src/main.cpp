#include <iostream>

#include "rsphere_cli/commands.hpp"

int main(int argc, char **argv) { return rsphere::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "gaptile/cli/app.hpp"

int main(int argc, char** argv) { return gaptile::cli::run(argc, argv, std::cout, std::cerr); }

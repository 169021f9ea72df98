#include <xsdprune/cli.hpp>

#include <iostream>

int
main(int argc, char** argv) {
  return xsdprune::cli::main(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "eitlab/cli.hpp"

int main(int argc, char** argv) {
  return eitlab::run_cli(argc, argv, std::cout, std::cerr);
}

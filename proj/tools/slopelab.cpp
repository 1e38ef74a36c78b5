#include <iostream>

#include "slopelab/cli.hpp"

int main(int argc, char** argv) {
  return slopelab::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

#include <iostream>

#include "cob3/cli.hpp"

int main(int argc, char** argv) {
  return cob3::run_cli(argc, argv, std::cout, std::cerr);
}

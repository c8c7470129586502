#include <iostream>

#include "caplat/cli.hpp"

int main(int argc, char** argv) {
  return caplat::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}

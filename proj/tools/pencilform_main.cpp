#include <iostream>

#include "pencilform/cli.hpp"

int main(int argc, char** argv) {
  return pencilform::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}

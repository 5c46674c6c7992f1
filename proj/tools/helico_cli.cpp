#include "helico/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return helico::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}

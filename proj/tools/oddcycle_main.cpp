#include <iostream>

#include "oddcycle/cli.hpp"

int main(int argc, char** argv) {
  return oddcycle::main_entry(argc, argv, std::cout, std::cerr);
}

#include <b0calc/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
  return b0calc::run_cli(argc, argv, std::cout, std::cerr);
}

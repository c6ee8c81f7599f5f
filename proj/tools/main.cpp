#include <iostream>

#include "graphbell/cli.hpp"

int main(int argc, char** argv) {
  return graphbell::cli::run(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "kendall/cli.hpp"

int main(int argc, char** argv) {
  return kendall::cli::run(argc, argv, std::cout, std::cerr);
}

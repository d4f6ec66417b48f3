#include <iostream>

#include "bddts/cli.hpp"

int main(int argc, char** argv) {
  return bddts::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

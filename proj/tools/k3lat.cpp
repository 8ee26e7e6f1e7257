#include "k3lat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return k3lat::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

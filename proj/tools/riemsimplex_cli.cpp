#include <iostream>
#include <string>
#include <vector>

#include "riemsimplex/cli.hpp"

int main(int argc, char** argv) {
  return riemsimplex::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

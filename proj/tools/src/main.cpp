#include <iostream>

#include "qcircle_cli/run.hpp"

int main(int argc, char** argv) {
  return qcircle::cli::main_entry({argv + 1, argv + argc}, std::cout, std::cerr);
}

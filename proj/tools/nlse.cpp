#include <iostream>

#include "nlse/app/commands.hpp"

int main(int argc, char** argv) {
  return nlse::app::run_cli(argc, argv, std::cout, std::cerr);
}

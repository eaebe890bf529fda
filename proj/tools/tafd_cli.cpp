#include "tafd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto res = tafd::cli::run(args);
  std::cout << res.output;
  std::cerr << res.error;
  return res.code;
}

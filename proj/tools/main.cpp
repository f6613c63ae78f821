#include <iostream>

#include "kron/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = kron::cli::run(args);
  if (!r.text.empty()) std::cout << r.text;
  else (r.ok ? std::cout : std::cerr) << r.payload.dump(2) << '\n';
  return r.exit_code;
}

#include "cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return conicmap::cli::main_entry({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}

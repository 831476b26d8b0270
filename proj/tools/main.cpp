#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto outcome = dioph::cli::run(args, std::cin, std::cerr);
  std::cout << outcome.report;
  return outcome.exit_code;
}

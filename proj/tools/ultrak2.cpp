#include <ultrak2/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ultrak2::cli::run_command(args, std::cout, std::cerr);
}

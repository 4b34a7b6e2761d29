// One line per acceptance criterion; nonzero exit if any fails.
#include <cstdlib>
#include <iostream>
#include <ultrak2/suite.hpp>

int main(int argc, char** argv) {
  ultrak2::SuiteConfig cfg;
  if (const char* env = std::getenv("ULTRAK2_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
  if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);
  std::cout << "seed " << cfg.seed << "\n";
  int failed = 0;
  for (auto& r : ultrak2::run_suite(cfg, {})) {
    std::cout << ultrak2::format_line(r) << std::endl;
    failed += !r.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}

#include <iostream>

#include "CLI11.hpp"

#include "acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string suite = "all";
  int only = 0;
  app.add_option("--suite", suite, "exact or all")->check(CLI::IsMember({"exact", "all"}));
  app.add_option("--only", only, "run a single criterion by number")->check(CLI::Range(0, 12));
  CLI11_PARSE(app, argc, argv);
  return gh::acceptance::run_suite(suite, std::cout, only);
}

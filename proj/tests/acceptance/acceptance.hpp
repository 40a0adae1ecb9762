#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gh::acceptance {

enum class Outcome { pass, fail, inconclusive };

struct Result {
  Outcome outcome = Outcome::fail;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  bool exact;  // exact arithmetic only, part of the "exact" suite
  std::function<Result()> run;
};

const std::vector<Criterion>& criteria();

/// Runs the "exact" or "all" suite (optionally a single criterion id), one
/// line per criterion. Returns 0 if all pass, 3 if the only problems are
/// inconclusive statistics, 1 otherwise.
int run_suite(std::string_view suite, std::ostream& out, int only = 0);

}  // namespace gh::acceptance

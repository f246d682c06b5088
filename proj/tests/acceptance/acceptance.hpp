#pragma once

#include <string>
#include <vector>

namespace mo::acceptance {

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

/// The twelve acceptance criteria, in order. Deterministic: every random draw is seeded.
std::vector<Criterion> run_all();

/// "PASS  3  power closed forms: ..." style line.
std::string format_line(const Criterion& c);

}  // namespace mo::acceptance

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fluxcat {

struct SelfTestCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast property suite over all modules; prints one line per case to `out`.
std::vector<SelfTestCase> run_selftest(std::ostream& out);

}  // namespace fluxcat

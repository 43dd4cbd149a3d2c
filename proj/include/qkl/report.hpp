#pragma once
// Verdict objects returned by every verify_* routine.

#include <string>
#include <utility>
#include <vector>

namespace qkl {

struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, long long>> params;  // ordered, e.g. {"r",1},{"m",3}
  bool passed = true;
  std::string witness;  // empty on success
  bool probabilistic = false;

  static CheckReport pass(std::string check, std::vector<std::pair<std::string, long long>> params) {
    return {std::move(check), std::move(params), true, {}, false};
  }
  CheckReport& fail(std::string why) {
    if (passed) witness = std::move(why);
    passed = false;
    return *this;
  }
};

}  // namespace qkl

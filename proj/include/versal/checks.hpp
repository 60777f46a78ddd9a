#ifndef VERSAL_CHECKS_HPP
#define VERSAL_CHECKS_HPP

#include <string>
#include <vector>

namespace versal {

/** One named verification outcome; detail is empty on success. */
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckList {
  std::vector<Check> checks;

  bool pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back(Check{name, ok, ok ? "" : detail});
  }
};

}  // namespace versal

#endif  // VERSAL_CHECKS_HPP

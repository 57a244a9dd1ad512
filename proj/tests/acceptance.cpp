// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exits nonzero only when a criterion fails that is not a known deviation.
#include <lfm/criteria.hpp>

#include <iostream>

int main() {
  int unexpected = 0;
  for (auto& run : lfm::acceptance_criteria(LFM_DATA_DIR)) {
    lfm::CheckResult r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.title << ": " << r.detail;
    if (!r.pass && r.known_deviation) std::cout << " [known deviation]";
    std::cout << std::endl;
    if (!r.pass && !r.known_deviation) ++unexpected;
  }
  return unexpected ? 1 : 0;
}

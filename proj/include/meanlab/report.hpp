#ifndef MEANLAB_REPORT_HPP
#define MEANLAB_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace meanlab {

struct CheckRecord {
  std::string name;
  std::string status;  // pass | fail | skip
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;
};

inline CheckRecord make_record(std::string name, bool pass, std::string detail = {}) {
  return CheckRecord{std::move(name), pass ? "pass" : "fail", std::move(detail), {}};
}

struct SuiteReport {
  std::vector<CheckRecord> records;
  double wall_time = 0.0;

  int count(const std::string& status) const {
    int n = 0;
    for (const auto& r : records)
      if (r.status == status) ++n;
    return n;
  }
  int passed() const { return count("pass"); }
  int failed() const { return count("fail"); }
  int skipped() const { return count("skip"); }
  bool all_passed() const { return failed() == 0; }

  void append(const SuiteReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }
};

}  // namespace meanlab

#endif

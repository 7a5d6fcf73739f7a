#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hq {

// One verified claim: a closed form against an oracle value, or the two
// sides of an inequality. Values are decimal strings so reports stay exact.
struct ReportRow {
  std::string suite;
  std::string anchor;    // stable claim id, traceable from CI output
  std::string formula;   // short statement of what is being compared
  std::string params;
  std::string lhs;
  std::string relation = "==";
  std::string rhs;
  bool match = false;
  bool expected_fail = false;
  long long micros = 0;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  int threads = 1;
  std::vector<ReportRow> rows;

  void add(ReportRow r) { rows.push_back(std::move(r)); }
  void append(const Report& other);
  // Canonical row order applied before emission so multi-threaded runs emit
  // identical reports.
  void sort_rows();

  // A row passes when it matches, or fails exactly as documented.
  bool ok() const;
  long long count_matched() const;
  long long count_expected_fails() const;
  long long count_unexpected() const;
  // First row that neither matched nor failed as documented; -1 if none.
  int first_unexpected() const;

  std::string to_csv(bool timings = true) const;
  std::string to_json(bool timings = true) const;
  std::string to_table(bool timings = true) const;
  std::string render(const std::string& format, bool timings = true) const;
};

}  // namespace hq

#include "hq/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace hq {

namespace {

bool row_passes(const ReportRow& r) { return r.expected_fail ? !r.match : r.match; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void Report::append(const Report& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void Report::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    if (a.anchor != b.anchor) return a.anchor < b.anchor;
    return a.params < b.params;
  });
}

bool Report::ok() const {
  return std::all_of(rows.begin(), rows.end(), row_passes);
}

long long Report::count_matched() const {
  return std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.match; });
}

long long Report::count_expected_fails() const {
  return std::count_if(rows.begin(), rows.end(),
                       [](const ReportRow& r) { return r.expected_fail && !r.match; });
}

long long Report::count_unexpected() const {
  return std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !row_passes(r); });
}

int Report::first_unexpected() const {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!row_passes(rows[i])) return static_cast<int>(i);
  return -1;
}

std::string Report::to_csv(bool timings) const {
  std::ostringstream out;
  out << "# schema=1 command=" << command << " seed=" << seed << " threads=" << threads << '\n';
  out << "suite,anchor,formula,params,closed_form,relation,oracle_value,match,expected_fail,"
         "micros\n";
  for (const ReportRow& r : rows) {
    out << csv_escape(r.suite) << ',' << csv_escape(r.anchor) << ',' << csv_escape(r.formula)
        << ',' << csv_escape(r.params) << ',' << r.lhs << ',' << csv_escape(r.relation) << ','
        << r.rhs << ',' << (r.match ? 1 : 0) << ',' << (r.expected_fail ? 1 : 0) << ','
        << (timings ? r.micros : 0) << '\n';
  }
  return out.str();
}

std::string Report::to_json(bool timings) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = command;
  j["seed"] = seed;
  j["threads"] = threads;
  j["rows"] = nlohmann::json::array();
  for (const ReportRow& r : rows) {
    j["rows"].push_back({{"suite", r.suite},
                         {"anchor", r.anchor},
                         {"formula", r.formula},
                         {"params", r.params},
                         {"closed_form", r.lhs},
                         {"relation", r.relation},
                         {"oracle_value", r.rhs},
                         {"match", r.match},
                         {"expected_fail", r.expected_fail},
                         {"micros", timings ? r.micros : 0}});
  }
  j["summary"] = {{"rows", rows.size()},
                  {"matched", count_matched()},
                  {"expected_fails", count_expected_fails()},
                  {"unexpected", count_unexpected()},
                  {"ok", ok()}};
  return j.dump(2);
}

std::string Report::to_table(bool timings) const {
  std::ostringstream out;
  if (!command.empty())
    out << command << " (seed=" << seed << ", threads=" << threads << ")\n";
  for (const ReportRow& r : rows) {
    out << (row_passes(r) ? "[ ok ]" : "[FAIL]") << ' ' << r.suite << '/' << r.anchor << ' '
        << r.formula;
    if (!r.params.empty()) out << " (" << r.params << ')';
    out << ": " << r.lhs << ' ' << r.relation << ' ' << r.rhs;
    if (!r.match) out << (r.expected_fail ? "  [fails as documented]" : "  [MISMATCH]");
    if (timings && r.micros > 0) out << "  [" << r.micros << " us]";
    out << '\n';
  }
  out << rows.size() << " rows, " << count_matched() << " matched, " << count_expected_fails()
      << " documented failures, " << count_unexpected() << " unexpected\n";
  return out.str();
}

std::string Report::render(const std::string& format, bool timings) const {
  if (format == "json") return to_json(timings);
  if (format == "csv") return to_csv(timings);
  return to_table(timings);
}

}  // namespace hq

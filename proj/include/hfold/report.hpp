#ifndef HFOLD_REPORT_HPP
#define HFOLD_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "hfold/epset.hpp"
#include "json.hpp"

namespace hfold {

using Json = nlohmann::ordered_json;

enum class ReportFormat { Markdown, Json, Csv };

/// Parses "md", "json", "csv"; throws std::invalid_argument otherwise.
ReportFormat parse_report_format(const std::string& text);

/// Table of results for one CLI run. Rows are JSON objects whose keys are
/// the columns, in column order.
struct RunReport {
  std::string command;
  Json params = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;
  /// Extra lines printed under the table (JSON key "notes").
  std::vector<std::string> notes;
  /// Only rendered when set, so default output stays byte-identical.
  std::optional<double> timing_ms;
};

std::string render(const RunReport& r, ReportFormat format);

/// {"p", "L", "R", "core", "left", "right"}
Json epset_to_json(const EpSet& s);
EpSet epset_from_json(const Json& j);

inline constexpr const char* kReportVersion = "1.0";

}  // namespace hfold

#endif  // HFOLD_REPORT_HPP

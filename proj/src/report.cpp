#include "hfold/report.hpp"

#include <sstream>
#include <stdexcept>

namespace hfold {

namespace {

std::string cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
  if (text == "md") return ReportFormat::Markdown;
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown format '" + text + "' (expected md, json or csv)");
}

std::string render(const RunReport& r, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Json: {
      Json j;
      j["command"] = r.command;
      j["params"] = r.params;
      j["rows"] = r.rows;
      if (!r.notes.empty()) j["notes"] = r.notes;
      if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
      j["version"] = kReportVersion;
      out << j.dump(2) << "\n";
      break;
    }
    case ReportFormat::Csv: {
      for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_escape(r.columns[i]);
      out << "\n";
      for (const Json& row : r.rows) {
        for (std::size_t i = 0; i < r.columns.size(); ++i)
          out << (i ? "," : "") << csv_escape(cell(row.value(r.columns[i], Json())));
        out << "\n";
      }
      break;
    }
    case ReportFormat::Markdown: {
      out << "# " << r.command << "\n\n";
      for (const auto& [k, v] : r.params.items()) out << "- " << k << ": " << (v.is_null() ? "none" : cell(v)) << "\n";
      if (!r.params.empty()) out << "\n";
      if (!r.columns.empty()) {
        out << "|";
        for (const std::string& c : r.columns) out << " " << c << " |";
        out << "\n|";
        for (std::size_t i = 0; i < r.columns.size(); ++i) out << " --- |";
        out << "\n";
        for (const Json& row : r.rows) {
          out << "|";
          for (const std::string& c : r.columns) out << " " << md_escape(cell(row.value(c, Json()))) << " |";
          out << "\n";
        }
      }
      if (!r.notes.empty()) out << "\n";
      for (const std::string& n : r.notes) out << n << "\n";
      if (r.timing_ms) out << "\ntime: " << *r.timing_ms << " ms\n";
      break;
    }
  }
  return out.str();
}

Json epset_to_json(const EpSet& s) {
  Json j;
  j["p"] = s.period();
  j["L"] = s.window_lo();
  j["R"] = s.window_hi();
  j["core"] = s.core();
  j["left"] = s.left_residues();
  j["right"] = s.right_residues();
  return j;
}

EpSet epset_from_json(const Json& j) {
  RawEpSet raw;
  raw.period = j.at("p").get<Int>();
  raw.lo = j.at("L").get<Int>();
  raw.hi = j.at("R").get<Int>();
  raw.core = j.at("core").get<std::vector<Int>>();
  raw.left = j.at("left").get<std::vector<Int>>();
  raw.right = j.at("right").get<std::vector<Int>>();
  return normalize(raw);
}

}  // namespace hfold

#include "uavdet/run_table.hpp"

#include <fmt/format.h>

#include "uavdet/error.hpp"

namespace uavdet {

std::string format_percent(double ratio) { return fmt::format("{:.2f}", ratio * 100.0); }

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string markdown_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string emit_table(const RunTable& table, TableFormat format) {
  if (table.rows.empty()) throw ParameterError("run table has no rows");
  for (const auto& r : table.rows) {
    if (r.runs < 1) throw ParameterError(fmt::format("run table row '{}' has no runs", r.label));
  }
  std::string out;
  if (format == TableFormat::Markdown) {
    out += "| Configuration | mAP mean (std) | Runs |\n";
    out += "|---|---|---|\n";
    for (const auto& r : table.rows) {
      out += fmt::format("| {} | {} ({}) | {} |\n", markdown_cell(r.label), format_percent(r.mean),
                         format_percent(r.std), r.runs);
    }
  } else {
    out += "configuration,mean,std,runs\n";
    for (const auto& r : table.rows) {
      out += fmt::format("{},{},{},{}\n", csv_field(r.label), format_percent(r.mean), format_percent(r.std),
                         r.runs);
    }
  }
  return out;
}

}  // namespace uavdet

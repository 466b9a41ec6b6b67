#pragma once

#include <string>
#include <vector>

namespace spx {

/// Minimal CSV with '#'-prefixed metadata comment lines before the header row.
/// Fields are comma-separated; no quoting (values in this toolkit never
/// contain commas).
struct CsvTable {
  std::vector<std::string> metadata;  // without the leading '#'
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& metadata,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Shortest decimal form that round-trips a double; used so CSV bodies are
/// byte-stable across runs.
std::string format_double(double value);

}  // namespace spx

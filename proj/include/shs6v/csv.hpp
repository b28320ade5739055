#pragma once

#include <string>
#include <vector>

namespace shs6v {

/// Shortest decimal string that round-trips the binary64 value.
std::string format_double(double x);

inline std::string cell(double x) { return format_double(x); }
inline std::string cell(int x) { return std::to_string(x); }
inline std::string cell(long x) { return std::to_string(x); }
inline std::string cell(long long x) { return std::to_string(x); }
inline std::string cell(const std::string& s) { return s; }

/// Comma-separated table with a header row, UTF-8, '.' decimal separator.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells);
  std::string to_string() const;
  void write(const std::string& path) const;

  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace shs6v

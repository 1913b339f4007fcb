#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ebp::cli {

/// Column-named numeric table. NaN cells are written blank (CSV) or null (JSON).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
};

/// Writes `<stem>.csv` or `<stem>.json` under `dir` and returns the path.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, const std::string& format);

/// 17 significant digits.
std::string format_number(double v);

}  // namespace ebp::cli

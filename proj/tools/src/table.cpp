#include "table.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include "json.hpp"
#include <stdexcept>

namespace ebp::cli {

namespace {

bool is_integer_column(const std::string& name) {
  return name == "ix" || name == "iy" || name == "iz" || name == "i" || name == "n" ||
         name == "trapped";
}

}  // namespace

void Table::add(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  return fmt::format("{:.17g}", v);
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, const std::string& format) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / (stem + (format == "json" ? ".json" : ".csv"));
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");

  if (format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (std::isnan(r[c])) {
          obj[table.columns[c]] = nullptr;
        } else if (is_integer_column(table.columns[c])) {
          obj[table.columns[c]] = static_cast<long long>(r[c]);
        } else {
          obj[table.columns[c]] = r[c];
        }
      }
      rows.push_back(std::move(obj));
    }
    os << rows.dump(2) << '\n';
    return path;
  }

  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << format_number(r[c]);
    os << '\n';
  }
  return path;
}

}  // namespace ebp::cli

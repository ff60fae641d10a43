#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qlzsm/config.hpp"

namespace qlzsm {

// Columnar numeric data with ordered string metadata. The single on-disk
// schema behind both the CSV and JSON writers.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
  }
  void add_row(std::vector<double> row);
};

// Shortest text form that parses back to the identical double (%.17g).
std::string format_double(double x);

void write_csv(const std::filesystem::path& path, const Table& table);
void write_json(const std::filesystem::path& path, const Table& table);
Table read_csv(const std::filesystem::path& path);
Table read_json(const std::filesystem::path& path);

// Writes with the extension and syntax of the chosen format and returns the
// file name actually used.
std::string write_table(const std::filesystem::path& dir,
                        const std::string& stem, OutputFormat format,
                        const Table& table);

}  // namespace qlzsm

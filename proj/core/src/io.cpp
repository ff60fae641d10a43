#include "qlzsm/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlzsm/version.hpp"

namespace qlzsm {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw ValidationError("row width does not match the column count");
  }
  rows.push_back(std::move(row));
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const Table& table) {
  auto out = open_out(path);
  out << "# schema_version = " << kSchemaVersion << "\n";
  for (const auto& [k, v] : table.metadata) {
    out << "# " << k << " = " << v << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << format_double(row[c]);
    }
    out << "\n";
  }
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        table.meta(trim(line.substr(1, eq - 1)), trim(line.substr(eq + 1)));
      }
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(trim(cell));
      have_header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      row.push_back(std::strtod(cell.c_str(), nullptr));
    }
    table.add_row(std::move(row));
  }
  return table;
}

void write_json(const std::filesystem::path& path, const Table& table) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

Table read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  nlohmann::ordered_json j;
  in >> j;
  Table table;
  for (const auto& [k, v] : j.at("metadata").items()) {
    table.meta(k, v.get<std::string>());
  }
  table.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) {
    table.add_row(row.get<std::vector<double>>());
  }
  return table;
}

std::string write_table(const std::filesystem::path& dir,
                        const std::string& stem, OutputFormat format,
                        const Table& table) {
  const std::string file =
      stem + (format == OutputFormat::kCsv ? ".csv" : ".json");
  if (format == OutputFormat::kCsv) {
    write_csv(dir / file, table);
  } else {
    write_json(dir / file, table);
  }
  return file;
}

}  // namespace qlzsm

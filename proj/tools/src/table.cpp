#include "qcircle_cli/table.hpp"

#include <fmt/format.h>

#include <json.hpp>

namespace qcircle::cli {

namespace {

std::string csv_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return fmt::format("{:.17g}", *d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return fmt::format("{}", *i);
  return std::get<std::string>(cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return *d;  // NaN/inf dump as null
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const ParamList& params, const Table& table) {
  nlohmann::ordered_json doc;
  doc["params"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : params) doc["params"][key] = json_cell(value);
  auto& result = doc["result"] = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (table.scalar && table.rows.size() == 1) {
      result[table.columns[c]] = json_cell(table.rows.front()[c]);
      continue;
    }
    auto column = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) column.push_back(json_cell(row[c]));
    result[table.columns[c]] = std::move(column);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace qcircle::cli

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qcircle::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Column-oriented result. A scalar result is a table with one row that is
/// emitted as plain values in JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool scalar = false;

  void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// Ordered key/value pairs echoed under "params".
using ParamList = std::vector<std::pair<std::string, Cell>>;

/// Header row then one line per row; doubles as %.17g.
void write_csv(std::ostream& out, const Table& table);

/// {"params": {...}, "result": {...}}; doubles use shortest round-trip
/// encoding, non-finite values become null.
void write_json(std::ostream& out, const ParamList& params, const Table& table);

}  // namespace qcircle::cli

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "rivlin/cli/config.hpp"

namespace rivlin::cli {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest decimal string that reads back to the same double.
std::string format_number(double value);

void write_csv(std::ostream& os, const Table& table);

/// Array of objects keyed by column name; empty cells and non-finite numbers become null.
void write_json(std::ostream& os, const Table& table);

std::string render(const Table& table, OutputFormat format);

/// Writes `content` to `path + ".tmp"` and renames it over `path`. The
/// temporary is removed if anything fails.
void write_file_atomically(const std::string& path, const std::string& content);

}  // namespace rivlin::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace codeweft {

// Empty cells are monostate; numbers keep their type so counts print as
// integers and shares as doubles.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Table() = default;
  explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}

  [[nodiscard]] std::optional<std::size_t> find_column(std::string_view name) const;
  // Throws Error(UnknownColumn).
  [[nodiscard]] std::size_t column_index(std::string_view name) const;
  // Pads short rows with empty cells; throws Error(Schema) on long ones.
  void add_row(std::vector<Cell> row);
};

// Text of a cell; doubles use the shortest round-trip form unless
// `decimals` is given.
std::string cell_text(const Cell &cell, std::optional<int> decimals = std::nullopt);

// Numeric view of a cell; strings are parsed. nullopt when not numeric.
std::optional<double> cell_number(const Cell &cell);

enum class Format { Csv, Jsonl };

struct WriteOptions {
  Format format = Format::Csv;
  // Fixed decimals for double cells in CSV output; JSONL keeps full precision.
  std::optional<int> csv_decimals;
};

void write_table(std::ostream &out, const Table &table, const WriteOptions &options = {});

// RFC 4180 records; accepts LF or CRLF line ends. Throws Error(Schema) on an
// unterminated quoted field.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_escape(std::string_view field);

// Reads a table written by write_table. CSV cells are strings; JSONL cells
// keep their JSON types. Throws Error(Schema).
Table read_table(std::string_view text, Format format);

}  // namespace codeweft

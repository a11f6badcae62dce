#include "codeweft/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "codeweft/error.hpp"

namespace codeweft {

std::optional<std::size_t> Table::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::column_index(std::string_view name) const {
  if (auto i = find_column(name)) return *i;
  std::string known;
  for (const std::string &c : columns) known += (known.empty() ? "" : ", ") + c;
  throw Error(ErrorCode::UnknownColumn,
              "unknown column '" + std::string(name) + "' (available: " + known + ")");
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() > columns.size()) {
    throw Error(ErrorCode::Schema, "row has " + std::to_string(row.size()) + " cells for " +
                                       std::to_string(columns.size()) + " columns");
  }
  row.resize(columns.size());
  rows.push_back(std::move(row));
}

namespace {

std::string shortest(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string cell_text(const Cell &cell, std::optional<int> decimals) {
  return std::visit(
      [&](const auto &v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          if (!decimals || !std::isfinite(v)) return shortest(v);
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.*f", *decimals, v);
          return buf;
        }
      },
      cell);
}

std::optional<double> cell_number(const Cell &cell) {
  if (const auto *i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  if (const auto *d = std::get_if<double>(&cell)) return *d;
  if (const auto *s = std::get_if<std::string>(&cell)) {
    double v = 0;
    const char *end = s->data() + s->size();
    auto res = std::from_chars(s->data(), end, v);
    if (res.ec == std::errc() && res.ptr == end && !s->empty()) return v;
  }
  return std::nullopt;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

nlohmann::ordered_json cell_json(const Cell &cell) {
  return std::visit(
      [](const auto &v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return shortest(v);
          return v;
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

void write_table(std::ostream &out, const Table &table, const WriteOptions &options) {
  if (options.format == Format::Csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << csv_escape(table.columns[i]);
    }
    out << '\n';
    for (const auto &row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << csv_escape(cell_text(row[i], options.csv_decimals));
      }
      out << '\n';
    }
    return;
  }
  for (const auto &row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    out << obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };
  while (i < text.size()) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
      } else {
        field += c;
      }
      ++i;
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_record();
      ++i;
    } else if (c == '\n') {
      end_record();
    } else {
      field += c;
      field_started = true;
    }
    ++i;
  }
  if (quoted) throw Error(ErrorCode::Schema, "unterminated quoted CSV field");
  if (field_started || !record.empty()) end_record();
  return records;
}

namespace {

Cell json_cell(const nlohmann::json &v) {
  if (v.is_null()) return std::monostate{};
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number()) return v.get<double>();
  if (v.is_boolean()) return std::string(v.get<bool>() ? "TRUE" : "FALSE");
  return v.dump();
}

}  // namespace

Table read_table(std::string_view text, Format format) {
  Table table;
  if (format == Format::Csv) {
    auto records = parse_csv(text);
    if (records.empty()) throw Error(ErrorCode::Schema, "CSV input has no header");
    table.columns = records.front();
    for (std::size_t r = 1; r < records.size(); ++r) {
      if (records[r].size() == 1 && records[r][0].empty() && table.columns.size() > 1) continue;
      if (records[r].size() != table.columns.size()) {
        throw Error(ErrorCode::Schema, "CSV row " + std::to_string(r + 1) + " has " +
                                           std::to_string(records[r].size()) + " fields, expected " +
                                           std::to_string(table.columns.size()));
      }
      std::vector<Cell> row;
      for (std::string &f : records[r]) row.emplace_back(std::move(f));
      table.rows.push_back(std::move(row));
    }
    return table;
  }
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    nlohmann::ordered_json obj;
    try {
      obj = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw Error(ErrorCode::Schema, "JSONL line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::Schema, "JSONL line " + std::to_string(line_no) + " is not an object");
    }
    for (const auto &item : obj.items()) {
      if (!table.find_column(item.key())) {
        table.columns.push_back(item.key());
        for (auto &row : table.rows) row.emplace_back();
      }
    }
    std::vector<Cell> row(table.columns.size());
    for (const auto &item : obj.items()) row[*table.find_column(item.key())] = json_cell(item.value());
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace codeweft

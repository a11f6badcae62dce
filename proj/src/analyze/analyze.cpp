#include "codeweft/analyze/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "codeweft/error.hpp"

namespace codeweft::analyze {

namespace {

std::vector<std::size_t> key_indices(const Table &t, const std::vector<std::string> &keys) {
  if (keys.empty()) throw Error(ErrorCode::Schema, "at least one grouping column is required");
  std::set<std::string> seen;
  std::vector<std::size_t> out;
  for (const std::string &k : keys) {
    if (!seen.insert(k).second) throw Error(ErrorCode::Schema, "duplicate grouping column '" + k + "'");
    out.push_back(t.column_index(k));
  }
  return out;
}

double number_or_throw(const Cell &c, const std::string &col) {
  if (auto v = cell_number(c)) return *v;
  throw Error(ErrorCode::Schema, "column '" + col + "' holds a non-numeric value '" + cell_text(c) + "'");
}

}  // namespace

Table count_funcs(const Table &rows, const std::vector<std::string> &keys, bool sort) {
  std::vector<std::size_t> idx = key_indices(rows, keys);
  std::map<std::vector<std::string>, std::int64_t> tally;
  for (const auto &row : rows.rows) {
    std::vector<std::string> key;
    key.reserve(idx.size());
    for (std::size_t i : idx) key.push_back(cell_text(row[i]));
    ++tally[key];
  }
  std::vector<std::pair<std::vector<std::string>, std::int64_t>> entries(tally.begin(), tally.end());
  if (sort) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto &a, const auto &b) { return a.second > b.second; });
  }
  std::vector<std::string> cols = keys;
  cols.emplace_back("n");
  Table out(std::move(cols));
  for (auto &[key, n] : entries) {
    std::vector<Cell> row;
    for (std::string &k : key) row.emplace_back(std::move(k));
    row.emplace_back(n);
    out.rows.push_back(std::move(row));
  }
  return out;
}

Table class_percentages(const Table &rows, const std::string &unit, const std::string &class_col) {
  std::size_t ui = rows.column_index(unit);
  std::size_t ci = rows.column_index(class_col);
  if (rows.rows.empty()) throw Error(ErrorCode::EmptyInput, "no rows to summarise");

  std::map<std::string, std::map<std::string, std::int64_t>> counts;
  for (const auto &row : rows.rows) ++counts[cell_text(row[ui])][cell_text(row[ci])];

  std::map<std::string, std::pair<double, std::int64_t>> share_sums;
  for (const auto &[u, classes] : counts) {
    std::int64_t total = 0;
    for (const auto &[c, n] : classes) total += n;
    for (const auto &[c, n] : classes) {
      auto &acc = share_sums[c];
      acc.first += static_cast<double>(n) / static_cast<double>(total);
      acc.second += 1;
    }
  }
  std::vector<std::pair<std::string, double>> result;
  for (const auto &[c, acc] : share_sums) {
    result.emplace_back(c, acc.first / static_cast<double>(acc.second) * 100.0);
  }
  // values equal up to rounding noise count as ties and keep name order
  auto key = [](double pct) { return std::llround(pct * 1e9); };
  std::stable_sort(result.begin(), result.end(),
                   [&](const auto &a, const auto &b) { return key(a.second) > key(b.second); });
  Table out({class_col, kAveragePercent});
  for (auto &[c, pct] : result) out.rows.push_back({c, pct});
  return out;
}

Table top_n_by_group(const Table &counts, const std::string &group_col, std::int64_t n,
                     const std::string &value_col) {
  if (n < 1) throw Error(ErrorCode::Schema, "n must be at least 1");
  std::optional<std::size_t> gi;
  if (!group_col.empty()) gi = counts.column_index(group_col);
  std::size_t vi = counts.column_index(value_col);

  std::map<std::string, std::vector<double>> values;
  for (const auto &row : counts.rows) {
    values[gi ? cell_text(row[*gi]) : std::string()].push_back(number_or_throw(row[vi], value_col));
  }
  std::map<std::string, double> cutoff;
  for (auto &[g, v] : values) {
    std::sort(v.begin(), v.end(), std::greater<>());
    std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(n), v.size());
    cutoff[g] = v[k - 1];
  }
  Table out(counts.columns);
  for (const auto &row : counts.rows) {
    std::string g = gi ? cell_text(row[*gi]) : std::string();
    if (number_or_throw(row[vi], value_col) >= cutoff.at(g)) out.rows.push_back(row);
  }
  return out;
}

}  // namespace codeweft::analyze

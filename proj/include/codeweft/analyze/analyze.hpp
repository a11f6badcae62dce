#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "codeweft/table.hpp"

namespace codeweft::analyze {

// One row per distinct key tuple plus a count column `n`. With `sort`, rows
// are ordered by n descending, then key tuple ascending; otherwise by key
// tuple ascending. Throws Error(UnknownColumn) or Error(Schema) for empty
// or duplicated keys.
Table count_funcs(const Table &rows, const std::vector<std::string> &keys, bool sort = true);

inline constexpr const char *kAveragePercent = "Average percent";

// Per unit, each class's share of the unit's rows; then the mean share per
// class over the units where it occurs, times 100, sorted descending (ties
// by class name). Columns: class_col, "Average percent". Throws
// Error(EmptyInput) when `rows` is empty.
Table class_percentages(const Table &rows, const std::string &unit, const std::string &class_col);

// Per group, the rows whose `value_col` is among the n largest; rows tied
// with the n-th value are all kept. Rows keep their input order. An empty
// `group_col` treats the table as one group.
Table top_n_by_group(const Table &counts, const std::string &group_col, std::int64_t n,
                     const std::string &value_col = "n");

}  // namespace codeweft::analyze

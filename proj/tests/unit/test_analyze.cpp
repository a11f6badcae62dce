#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "codeweft/analyze/analyze.hpp"
#include "codeweft/error.hpp"
#include "codeweft/table.hpp"

using namespace codeweft;
using namespace codeweft::analyze;

namespace {

const std::string kFixtures = CODEWEFT_FIXTURE_DIR;

Table load_fixture(const std::string &name) {
  std::ifstream in(kFixtures + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_table(ss.str(), Format::Csv);
}

// One row per counted item: every fixture row is repeated `n` times.
Table expand(const Table &counts) {
  std::size_t ni = counts.column_index("n");
  std::vector<std::string> cols;
  for (std::size_t i = 0; i < counts.columns.size(); ++i) {
    if (i != ni) cols.push_back(counts.columns[i]);
  }
  Table out(cols);
  for (const auto &row : counts.rows) {
    std::vector<Cell> base;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i != ni) base.push_back(row[i]);
    }
    auto n = static_cast<std::int64_t>(*cell_number(row[ni]));
    for (std::int64_t k = 0; k < n; ++k) out.rows.push_back(base);
  }
  return out;
}

std::vector<std::string> column(const Table &t, const std::string &name) {
  std::size_t i = t.column_index(name);
  std::vector<std::string> out;
  for (const auto &row : t.rows) out.push_back(cell_text(row[i]));
  return out;
}

Table rows_of(const std::vector<std::vector<std::string>> &data, std::vector<std::string> cols) {
  Table t(std::move(cols));
  for (const auto &r : data) {
    std::vector<Cell> row(r.begin(), r.end());
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace

TEST_CASE("count two files sharing a function") {
  Table t = rows_of({{"a.R", "f"}, {"b.R", "f"}}, {"file", "func"});
  Table c = count_funcs(t, {"func"});
  REQUIRE(c.rows.size() == 1);
  CHECK(cell_text(c.rows[0][0]) == "f");
  CHECK(std::get<std::int64_t>(c.rows[0][1]) == 2);
}

TEST_CASE("count errors") {
  Table t = rows_of({{"a", "f"}}, {"file", "func"});
  CHECK_THROWS_AS(count_funcs(t, {}), Error);
  CHECK_THROWS_AS(count_funcs(t, {"func", "func"}), Error);
  try {
    count_funcs(t, {"pkg"});
    FAIL("expected UnknownColumn");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::UnknownColumn);
  }
}

TEST_CASE("count ordering breaks ties by key") {
  Table t = rows_of({{"b"}, {"a"}, {"c"}, {"c"}, {"b"}, {"a"}, {"d"}}, {"func"});
  Table c = count_funcs(t, {"func"});
  CHECK(column(c, "func") == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(column(c, "n") == std::vector<std::string>{"2", "2", "2", "1"});
  Table u = count_funcs(rows_of({{"b"}, {"a"}, {"b"}}, {"func"}), {"func"}, false);
  CHECK(column(u, "func") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("count matches a naive tally") {
  std::mt19937 rng(17);
  std::vector<std::string> pkgs{"dplyr", "datatable", "ggplot2"};
  std::vector<std::string> funcs{"<-", "=", "if", "{", "c", "f", "g"};
  for (int round = 0; round < 100; ++round) {
    Table t({"pkg", "func"});
    int n = std::uniform_int_distribution<int>(0, 300)(rng);
    std::unordered_map<std::string, std::int64_t> naive;
    for (int i = 0; i < n; ++i) {
      std::string p = pkgs[std::uniform_int_distribution<std::size_t>(0, 2)(rng)];
      std::string f = funcs[std::uniform_int_distribution<std::size_t>(0, funcs.size() - 1)(rng)];
      t.add_row({p, f});
      ++naive[p + "\x1f" + f];
    }
    Table c = count_funcs(t, {"pkg", "func"});
    CHECK(c.rows.size() == naive.size());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
      const auto &row = c.rows[i];
      std::int64_t got = std::get<std::int64_t>(row[2]);
      total += got;
      CHECK(naive[cell_text(row[0]) + "\x1f" + cell_text(row[1])] == got);
      if (i > 0) {
        std::int64_t prev = std::get<std::int64_t>(c.rows[i - 1][2]);
        bool ordered = prev > got || (prev == got && std::make_pair(cell_text(c.rows[i - 1][0]),
                                                                    cell_text(c.rows[i - 1][1])) <
                                                         std::make_pair(cell_text(row[0]), cell_text(row[1])));
        CHECK(ordered);
      }
    }
    CHECK(total == n);
  }
}

TEST_CASE("p-hack-athon style counts") {
  Table rows = expand(load_fixture("phackathon_counts.csv"));
  Table c = count_funcs(rows, {"func", "classification"});
  REQUIRE(c.rows.size() == 15);
  CHECK(cell_text(c.rows[0][0]) == "summary");
  CHECK(cell_text(c.rows[0][1]) == "exploratory");
  CHECK(std::get<std::int64_t>(c.rows[0][2]) == 361);
  std::vector<std::string> funcs = column(c, "func");
  std::vector<std::string> top10(funcs.begin(), funcs.begin() + 10);
  CHECK(top10 == std::vector<std::string>{"summary", "lm", "factor", "select", "library", "as.factor",
                                          "filter", "aes", "ggplot", "lmer"});

  Table top = top_n_by_group(c, "classification", 5);
  std::map<std::string, int> per_class;
  for (const auto &row : top.rows) ++per_class[cell_text(row[1])];
  CHECK(per_class["data cleaning"] == 4);
  CHECK(per_class["modeling"] == 2);
}

TEST_CASE("static analysis counts and top ten") {
  Table rows = expand(load_fixture("static_counts.csv"));
  Table c = count_funcs(rows, {"pkg", "func"});
  REQUIRE(c.rows.size() >= 2);
  CHECK(cell_text(c.rows[0][0]) == "datatable");
  CHECK(cell_text(c.rows[0][1]) == "=");
  CHECK(std::get<std::int64_t>(c.rows[0][2]) == 1640);
  CHECK(cell_text(c.rows[1][0]) == "dplyr");
  CHECK(cell_text(c.rows[1][1]) == "<-");
  CHECK(std::get<std::int64_t>(c.rows[1][2]) == 1634);

  Table top = top_n_by_group(c, "pkg", 10);
  std::vector<std::string> dt, dp;
  for (const auto &row : top.rows) (cell_text(row[0]) == "datatable" ? dt : dp).push_back(cell_text(row[1]));
  CHECK(dt.size() == 10);
  CHECK(dt.front() == "=");
  // list and vapply tie for tenth place; both stay
  CHECK(dp.size() == 11);
  CHECK(dp.front() == "<-");
  CHECK(std::find(dp.begin(), dp.end(), "paste0") == dp.end());
}

TEST_CASE("top_n properties") {
  std::mt19937 rng(8);
  for (int round = 0; round < 100; ++round) {
    Table t({"g", "k", "n"});
    int rows = std::uniform_int_distribution<int>(1, 30)(rng);
    for (int i = 0; i < rows; ++i) {
      t.add_row({std::string(1, static_cast<char>('a' + std::uniform_int_distribution<int>(0, 2)(rng))),
                 std::to_string(i), std::int64_t{std::uniform_int_distribution<int>(1, 6)(rng)}});
    }
    std::int64_t n = std::uniform_int_distribution<int>(1, 5)(rng);
    Table top = top_n_by_group(t, "g", n);
    // subset, input order, and every excluded row is no larger than every included one
    std::size_t j = 0;
    std::map<std::string, std::vector<std::int64_t>> in, out;
    for (const auto &row : t.rows) {
      bool kept = j < top.rows.size() && cell_text(top.rows[j][1]) == cell_text(row[1]);
      if (kept) ++j;
      (kept ? in : out)[cell_text(row[0])].push_back(std::get<std::int64_t>(row[2]));
    }
    CHECK(j == top.rows.size());
    for (auto &[g, vals] : in) {
      auto lowest = *std::min_element(vals.begin(), vals.end());
      for (auto v : out[g]) CHECK(v < lowest);
      // naive: count of values strictly above the cutoff is below n
      std::vector<std::int64_t> all = vals;
      all.insert(all.end(), out[g].begin(), out[g].end());
      std::sort(all.rbegin(), all.rend());
      auto cutoff = all[std::min<std::size_t>(static_cast<std::size_t>(n), all.size()) - 1];
      CHECK(lowest == cutoff);
    }
  }
}

TEST_CASE("top_n small group and errors") {
  Table t = rows_of({{"a", "1"}, {"a", "3"}, {"a", "2"}}, {"g", "n"});
  CHECK(top_n_by_group(t, "g", 5).rows.size() == 3);
  CHECK(top_n_by_group(t, "", 1).rows.size() == 1);
  CHECK_THROWS_AS(top_n_by_group(t, "g", 0), Error);
  CHECK_THROWS_AS(top_n_by_group(t, "nope", 1), Error);
}

TEST_CASE("percentages for one unit") {
  Table t = rows_of({{"1", "setup"}, {"1", "setup"}}, {"id", "classification"});
  Table p = class_percentages(t, "id", "classification");
  CHECK(p.columns == std::vector<std::string>{"classification", "Average percent"});
  REQUIRE(p.rows.size() == 1);
  CHECK(std::get<double>(p.rows[0][1]) == doctest::Approx(100.0));
}

TEST_CASE("percentages average unit shares") {
  Table t({"id", "classification"});
  for (int i = 0; i < 40; ++i) t.add_row({std::string("a"), std::string("data cleaning")});
  for (int i = 0; i < 60; ++i) t.add_row({std::string("a"), std::string("modeling")});
  for (int i = 0; i < 41; ++i) t.add_row({std::string("b"), std::string("data cleaning")});
  for (int i = 0; i < 84; ++i) t.add_row({std::string("b"), std::string("setup")});
  Table p = class_percentages(t, "id", "classification");
  REQUIRE(p.rows.size() == 3);
  CHECK(column(p, "classification") == std::vector<std::string>{"setup", "modeling", "data cleaning"});
  CHECK(std::get<double>(p.rows[2][1]) == doctest::Approx(36.40).epsilon(1e-9));
}

TEST_CASE("percentages match a naive computation") {
  std::mt19937 rng(99);
  std::vector<std::string> classes{"setup", "import", "modeling", "export"};
  for (int round = 0; round < 50; ++round) {
    Table t({"id", "classification"});
    int n = std::uniform_int_distribution<int>(1, 200)(rng);
    for (int i = 0; i < n; ++i) {
      t.add_row({std::to_string(std::uniform_int_distribution<int>(0, 6)(rng)),
                 classes[std::uniform_int_distribution<std::size_t>(0, 3)(rng)]});
    }
    std::map<std::string, std::map<std::string, double>> per_unit;
    for (const auto &row : t.rows) per_unit[cell_text(row[0])][cell_text(row[1])] += 1;
    std::map<std::string, std::vector<double>> shares;
    for (auto &[u, m] : per_unit) {
      double total = 0;
      for (auto &[c, v] : m) total += v;
      double sum = 0;
      for (auto &[c, v] : m) {
        shares[c].push_back(v / total);
        sum += v / total;
      }
      CHECK(std::fabs(sum - 1.0) < 1e-9);
    }
    Table p = class_percentages(t, "id", "classification");
    CHECK(p.rows.size() == shares.size());
    for (const auto &row : p.rows) {
      auto &v = shares[cell_text(row[0])];
      double mean = 0;
      for (double s : v) mean += s;
      mean = mean / static_cast<double>(v.size()) * 100.0;
      CHECK(std::get<double>(row[1]) == doctest::Approx(mean).epsilon(1e-12));
    }
  }
}

TEST_CASE("percentages on an empty table") {
  Table t({"id", "classification"});
  try {
    class_percentages(t, "id", "classification");
    FAIL("expected EmptyInput");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::EmptyInput);
  }
}

TEST_CASE("calibrated table one fixture") {
  Table rows = expand(load_fixture("table1_counts.csv"));
  Table p = class_percentages(rows, "id", "classification");
  std::vector<std::pair<std::string, double>> want{
      {"data cleaning", 36.40}, {"visualization", 23.17}, {"exploratory", 21.32},
      {"setup", 18.87},         {"modeling", 17.69},      {"import", 8.58},
      {"communication", 5.14},  {"evaluation", 3.62},     {"export", 0.82}};
  REQUIRE(p.rows.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(cell_text(p.rows[i][0]) == want[i].first);
    CHECK(std::fabs(std::get<double>(p.rows[i][1]) - want[i].second) <= 0.01);
  }
}

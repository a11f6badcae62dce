#include "codeweft/cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "codeweft/analyze/analyze.hpp"
#include "codeweft/corpus/corpus.hpp"
#include "codeweft/lexicon/lexicon.hpp"
#include "codeweft/recorder/recorder.hpp"
#include "codeweft/rparse/ast_json.hpp"
#include "codeweft/rparse/deparse.hpp"
#include "codeweft/table.hpp"
#include "codeweft/unnest/unnest.hpp"
#include "codeweft/version.hpp"

namespace codeweft::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::Http:
    case ErrorCode::MissingLog: return kIo;
    case ErrorCode::UnterminatedString:
    case ErrorCode::UnterminatedBacktick:
    case ErrorCode::InvalidCharacter:
    case ErrorCode::InvalidUtf8:
    case ErrorCode::Syntax:
    case ErrorCode::Incomplete:
    case ErrorCode::MultipleExpressions: return kPartialParse;
    case ErrorCode::Schema:
    case ErrorCode::UnknownLexicon:
    case ErrorCode::UnknownCategory:
    case ErrorCode::ScoreOutOfRange:
    case ErrorCode::UnknownColumn:
    case ErrorCode::EmptyInput: return kData;
  }
  return kData;
}

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  std::string format = "csv";
  std::string output;
  std::string lexicon_path;
};

struct SourceOptions {
  std::vector<std::string> sources;
  std::string code;
  bool drop_literals = false;
};

struct Context {
  std::istream &in;
  std::ostream &out;
  std::ostream &err;
  Globals globals;
  std::unique_ptr<std::ofstream> file;

  std::ostream &sink() {
    if (globals.output.empty() || globals.output == "-") return out;
    if (!file) {
      file = std::make_unique<std::ofstream>(globals.output, std::ios::binary | std::ios::trunc);
      if (!*file) throw Error(ErrorCode::Io, "cannot write " + globals.output);
    }
    return *file;
  }

  [[nodiscard]] Format format() const { return globals.format == "jsonl" ? Format::Jsonl : Format::Csv; }

  void emit(const Table &t, std::optional<int> csv_decimals = std::nullopt) {
    write_table(sink(), t, WriteOptions{format(), csv_decimals});
  }
};

// Exit status accumulated from per-source problems.
struct Status {
  int code = kOk;
  void raise(int c) {
    if (c == kIo || (c == kPartialParse && code == kOk) || (c == kData && code != kIo)) code = c;
  }
};

bool is_literal(const rparse::Expr &e) {
  return e.kind() == rparse::ExprKind::String || e.kind() == rparse::ExprKind::Null;
}

corpus::ReadResult gather(Context &ctx, const SourceOptions &src, Status &status,
                          const corpus::ReadResult *prefetched = nullptr) {
  corpus::ReadResult res;
  if (prefetched != nullptr) {
    res = *prefetched;
  } else if (!src.code.empty()) {
    res = corpus::recital(src.code);
  } else {
    std::vector<std::string> sources = src.sources;
    for (auto &s : sources) {
      if (s == "-") {
        std::ostringstream ss;
        ss << ctx.in.rdbuf();
        corpus::ReadResult part = corpus::parse_source("<stdin>", ss.str());
        for (auto &r : part.records) res.records.push_back(std::move(r));
        for (auto &e : part.errors) res.errors.push_back(std::move(e));
        continue;
      }
      corpus::ReadResult part = corpus::read_rfiles({s});
      for (auto &r : part.records) res.records.push_back(std::move(r));
      for (auto &e : part.errors) res.errors.push_back(std::move(e));
    }
  }
  for (const auto &e : res.errors) {
    ctx.err << "codeweft: " << e.to_string() << '\n';
    status.raise(exit_code_for(e.code));
  }
  if (src.drop_literals) {
    std::vector<CallRecord> kept;
    for (auto &r : res.records) {
      if (!is_literal(r.expr)) kept.push_back(std::move(r));
    }
    res.records = std::move(kept);
  }
  return res;
}

void emit_records(Context &ctx, const std::vector<CallRecord> &records, bool json_ast) {
  if (ctx.format() == Format::Jsonl) {
    std::ostream &os = ctx.sink();
    for (const auto &r : records) {
      json row;
      row["file"] = r.file;
      row["line"] = r.line;
      row["text"] = r.text;
      if (json_ast) row["ast"] = rparse::to_json(r.expr);
      os << row.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
    return;
  }
  std::vector<std::string> cols{"file", "line", "text"};
  if (json_ast) cols.emplace_back("ast");
  Table t(cols);
  for (const auto &r : records) {
    std::vector<Cell> row{r.file, std::int64_t{r.line}, r.text};
    if (json_ast) {
      row.emplace_back(rparse::to_json(r.expr).dump(-1, ' ', false,
                                                    nlohmann::json::error_handler_t::replace));
    }
    t.rows.push_back(std::move(row));
  }
  ctx.emit(t);
}

std::vector<std::pair<std::string, std::string>> parse_labels(const std::vector<std::string> &labels) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &l : labels) {
    auto eq = l.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--label", "expected COLUMN=VALUE, got '" + l + "'");
    }
    out.emplace_back(l.substr(0, eq), l.substr(eq + 1));
  }
  return out;
}

Table token_table(const std::vector<unnest::FuncToken> &tokens, bool with_depth,
                  const std::vector<std::pair<std::string, std::string>> &labels) {
  std::vector<std::string> cols;
  for (const auto &[k, v] : labels) cols.push_back(k);
  for (const char *c : {"file", "line", "func", "args"}) cols.emplace_back(c);
  if (with_depth) cols.emplace_back("depth");
  Table t(cols);
  for (const auto &tok : tokens) {
    std::vector<Cell> row;
    for (const auto &[k, v] : labels) row.emplace_back(v);
    row.emplace_back(tok.file);
    row.emplace_back(std::int64_t{tok.line});
    row.emplace_back(tok.func);
    row.emplace_back(unnest::format_args(tok.args));
    if (with_depth) row.emplace_back(std::int64_t{tok.depth});
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string read_input(Context &ctx, const std::string &path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << ctx.in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, path + ": cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Format input_format(const std::string &flag, const std::string &path) {
  if (flag == "jsonl") return Format::Jsonl;
  if (flag == "csv") return Format::Csv;
  auto ends_with = [&](const char *suffix) {
    std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  return ends_with(".jsonl") || ends_with(".ndjson") ? Format::Jsonl : Format::Csv;
}

std::vector<std::string> split_commas(const std::vector<std::string> &items) {
  std::vector<std::string> out;
  for (const auto &item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

std::filesystem::path lexicon_file(const Context &ctx, std::string_view name) {
  std::optional<std::filesystem::path> dir;
  if (!ctx.globals.lexicon_path.empty()) dir = ctx.globals.lexicon_path;
  return lexicon::lexicon_dir(dir) / name;
}

void add_source_options(CLI::App *cmd, SourceOptions &src) {
  cmd->add_option("sources", src.sources, "R files or http(s) URLs; '-' reads standard input");
  cmd->add_option("--code", src.code, "Parse this string instead of files");
  cmd->add_flag("--drop-literals", src.drop_literals,
                "Drop top-level string and NULL expressions");
}

}  // namespace

int run(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err) {
  CLI::App app{"codeweft: parse R code into tidy call tables"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  Context ctx{in, out, err, {}, nullptr};
  app.add_option("--format", ctx.globals.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--output,-o", ctx.globals.output, "Write output to this file");
  app.add_option("--lexicon-path", ctx.globals.lexicon_path,
                 "Directory holding classifications.csv and stopfuncs.txt");

  // parse
  SourceOptions parse_src;
  bool json_ast = false;
  auto *parse_cmd = app.add_subcommand("parse", "One row per top-level expression");
  add_source_options(parse_cmd, parse_src);
  parse_cmd->add_flag("--json-ast", json_ast, "Include the expression tree as JSON");

  // unnest
  SourceOptions unnest_src;
  bool with_depth = false;
  std::vector<std::string> unnest_labels;
  auto *unnest_cmd = app.add_subcommand("unnest", "One row per function call");
  add_source_options(unnest_cmd, unnest_src);
  unnest_cmd->add_flag("--with-depth", with_depth, "Add the call nesting depth");
  unnest_cmd->add_option("--label", unnest_labels, "Constant column COLUMN=VALUE (repeatable)")
      ->allow_extra_args(false);

  // classify
  SourceOptions classify_src;
  std::string lexicon_name;
  bool best = false;
  bool drop_stops = false;
  std::vector<std::string> classify_labels;
  auto *classify_cmd = app.add_subcommand("classify", "Join calls with a classification lexicon");
  add_source_options(classify_cmd, classify_src);
  classify_cmd->add_option("--lexicon", lexicon_name, "Use only this lexicon (e.g. crowdsource)");
  classify_cmd->add_flag("--best", best, "Keep only the top classification per function");
  classify_cmd->add_flag("--drop-stopfuncs", drop_stops, "Remove stop functions first");
  classify_cmd->add_option("--label", classify_labels, "Constant column COLUMN=VALUE (repeatable)")
      ->allow_extra_args(false);

  // stats
  auto *stats_cmd = app.add_subcommand("stats", "Summaries over a table of calls");
  stats_cmd->require_subcommand(1);
  std::string stats_input;
  std::string stats_input_format;
  std::vector<std::string> by;
  bool no_sort = false;
  auto *counts_cmd = stats_cmd->add_subcommand("counts", "Count rows per key tuple");
  counts_cmd->add_option("input", stats_input, "CSV or JSONL table; '-' or omitted reads stdin");
  counts_cmd->add_option("--by", by, "Key columns (comma separated)")->required()->allow_extra_args(false);
  counts_cmd->add_flag("--no-sort", no_sort, "Order by key instead of by count");
  counts_cmd->add_option("--input-format", stats_input_format)->check(CLI::IsMember({"csv", "jsonl"}));

  std::string unit = "id";
  std::string class_col = "classification";
  auto *percent_cmd = stats_cmd->add_subcommand("percent", "Average per-unit class percentages");
  percent_cmd->add_option("input", stats_input, "CSV or JSONL table; '-' or omitted reads stdin");
  percent_cmd->add_option("--unit", unit, "Column identifying a unit (default id)");
  percent_cmd->add_option("--class", class_col, "Class column (default classification)");
  percent_cmd->add_option("--input-format", stats_input_format)->check(CLI::IsMember({"csv", "jsonl"}));

  std::string top_by;
  std::int64_t top_n = 10;
  std::string value_col = "n";
  auto *top_cmd = stats_cmd->add_subcommand("top", "Top rows per group, keeping ties");
  top_cmd->add_option("input", stats_input, "Count table; '-' or omitted reads stdin");
  top_cmd->add_option("--by", top_by, "Group column (omit for one group)");
  top_cmd->add_option("--n", top_n, "Rows per group (default 10)")->check(CLI::PositiveNumber);
  top_cmd->add_option("--value", value_col, "Column to rank by (default n)");
  top_cmd->add_option("--input-format", stats_input_format)->check(CLI::IsMember({"csv", "jsonl"}));

  // record
  std::string log_path;
  bool record_value = false;
  bool show_table = false;
  bool remove = false;
  auto *record_cmd = app.add_subcommand("record", "Log expressions read from stdin");
  record_cmd->add_option("--log", log_path, "Session log path");
  record_cmd->add_flag("--value", record_value, "Accepted for compatibility; values are not captured");
  auto *table_flag = record_cmd->add_flag("--table", show_table, "Print the log as a table instead");
  record_cmd->add_flag("--remove", remove, "Delete the log instead")->excludes(table_flag);

  // recital
  SourceOptions recital_src;
  auto *recital_cmd = app.add_subcommand("recital", "Expressions with empty outcome columns");
  recital_cmd->add_option("file", recital_src.sources, "R file")->expected(0, 1);
  recital_cmd->add_option("--code", recital_src.code, "Code string");

  // fetch
  std::string manifest;
  int concurrency = 4;
  int retries = 2;
  bool fetch_ast = false;
  auto *fetch_cmd = app.add_subcommand("fetch", "Read every source listed in a manifest");
  fetch_cmd->add_option("manifest", manifest, "File of URLs or paths, one per line")->required();
  fetch_cmd->add_option("--concurrency,-j", concurrency, "Parallel downloads")
      ->check(CLI::PositiveNumber);
  fetch_cmd->add_option("--retries", retries, "Retries per URL")->check(CLI::NonNegativeNumber);
  fetch_cmd->add_flag("--json-ast", fetch_ast, "Include the expression tree as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Status status;
  try {
    if (parse_cmd->parsed()) {
      auto res = gather(ctx, parse_src, status);
      emit_records(ctx, res.records, json_ast);
    } else if (unnest_cmd->parsed()) {
      auto labels = parse_labels(unnest_labels);
      auto res = gather(ctx, unnest_src, status);
      ctx.emit(token_table(unnest::unnest_corpus(res.records), with_depth, labels));
    } else if (classify_cmd->parsed()) {
      auto labels = parse_labels(classify_labels);
      lexicon::LoadOptions opts;
      if (!lexicon_name.empty()) opts.which = lexicon_name;
      opts.include_duplicates = !best;
      auto entries = lexicon::load_classifications(lexicon_file(ctx, lexicon::kClassificationsFile), opts);
      std::optional<lexicon::StopFuncList> stops;
      if (drop_stops) stops = lexicon::load_stopfuncs(lexicon_file(ctx, lexicon::kStopfuncsFile));
      auto res = gather(ctx, classify_src, status);
      auto tokens = unnest::unnest_corpus(res.records);
      if (stops) tokens = lexicon::remove_stopfuncs(tokens, *stops);
      auto rows = lexicon::classify(tokens, entries);
      std::vector<std::string> cols;
      for (const auto &[k, v] : labels) cols.push_back(k);
      for (const char *c : {"file", "line", "func", "classification", "lexicon"}) cols.emplace_back(c);
      if (!best) cols.emplace_back("score");
      Table t(cols);
      for (const auto &r : rows) {
        std::vector<Cell> row;
        for (const auto &[k, v] : labels) row.emplace_back(v);
        row.emplace_back(r.token.file);
        row.emplace_back(std::int64_t{r.token.line});
        row.emplace_back(r.token.func);
        row.emplace_back(r.classification);
        row.emplace_back(r.lexicon);
        if (!best) row.emplace_back(r.score);
        t.rows.push_back(std::move(row));
      }
      ctx.emit(t);
    } else if (stats_cmd->parsed()) {
      Table input = read_table(read_input(ctx, stats_input), input_format(stats_input_format, stats_input));
      if (counts_cmd->parsed()) {
        ctx.emit(analyze::count_funcs(input, split_commas(by), !no_sort));
      } else if (percent_cmd->parsed()) {
        ctx.emit(analyze::class_percentages(input, unit, class_col), 2);
      } else {
        ctx.emit(analyze::top_n_by_group(input, top_by, top_n, value_col));
      }
    } else if (record_cmd->parsed()) {
      std::filesystem::path path = log_path.empty() ? recorder::default_log_path() : std::filesystem::path(log_path);
      if (remove) {
        if (!recorder::remove_log(path)) err << "codeweft: warning: no session log at " << path.string() << '\n';
      } else if (show_table) {
        ctx.emit(recorder::log_table(path));
      } else {
        recorder::SessionLog log(path);
        recorder::Clock clock = [] { return std::chrono::system_clock::now(); };
        auto events = recorder::record(in, clock, log, recorder::RecordOptions{record_value});
        err << "codeweft: logged " << events.size() << " events to " << path.string() << '\n';
      }
    } else if (recital_cmd->parsed()) {
      auto res = gather(ctx, recital_src, status);
      std::vector<std::string> cols{"expr"};
      for (auto c : corpus::kRecitalOutcomeColumns) cols.emplace_back(c);
      Table t(cols);
      for (const auto &r : res.records) t.add_row({r.text});
      ctx.emit(t);
    } else if (fetch_cmd->parsed()) {
      corpus::FetchOptions fopts;
      fopts.retries = retries;
      auto fetched = corpus::fetch_manifest(manifest, concurrency, fopts);
      auto res = gather(ctx, SourceOptions{}, status, &fetched);
      emit_records(ctx, res.records, fetch_ast);
    }
  } catch (const CLI::ValidationError &e) {
    err << "codeweft: " << e.what() << '\n';
    return kUsage;
  } catch (const Error &e) {
    err << "codeweft: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  if (ctx.file) {
    ctx.file->flush();
    if (!*ctx.file) {
      err << "codeweft: IoError: write to " << ctx.globals.output << " failed\n";
      return kIo;
    }
  }
  return status.code;
}

}  // namespace codeweft::cli

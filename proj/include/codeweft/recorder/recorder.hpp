#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "codeweft/rparse/expr.hpp"
#include "codeweft/table.hpp"

namespace codeweft::recorder {

enum class EventKind { BoundaryStart, BoundaryStop, Expression };

std::string_view event_kind_name(EventKind kind);

struct SessionEvent {
  EventKind kind = EventKind::Expression;
  std::chrono::system_clock::time_point dt;
  std::string expr_text;              // source text; "sessionInfo()" for boundaries
  std::optional<rparse::Expr> expr;   // absent for raw (unparseable) input
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  [[nodiscard]] bool raw() const { return kind == EventKind::Expression && !expr; }
};

using Clock = std::function<std::chrono::system_clock::time_point()>;

struct RecordOptions {
  bool value = false;  // accepted for compatibility; values are never captured
};

// "2018-09-11T22:22:12.000Z"
std::string format_rfc3339(std::chrono::system_clock::time_point t);
std::chrono::system_clock::time_point parse_rfc3339(const std::string &text);

// Appends one JSON object per line to a log file, flushing after each.
class SessionLog {
 public:
  explicit SessionLog(std::filesystem::path path);
  void append(const SessionEvent &event);
  [[nodiscard]] const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Accumulates `input` lines until they form complete expressions and logs
// one event per top-level expression, bracketed by boundary events.
// Input that never completes or does not parse is logged raw.
std::vector<SessionEvent> record(std::istream &input, const Clock &clock, SessionLog &log,
                                 const RecordOptions &options = {});

// Every event in the log, across sessions. Throws Error(MissingLog).
std::vector<SessionEvent> read_log(const std::filesystem::path &path);

// Columns expr, value, path, contents, selection, dt.
Table log_table(const std::filesystem::path &path);

// Deletes the log; false when there was nothing to delete.
bool remove_log(const std::filesystem::path &path);

// $CODEWEFT_LOG_PATH, else $XDG_STATE_HOME/codeweft/session.jsonl, else
// ~/.local/state/codeweft/session.jsonl.
std::filesystem::path default_log_path();

// Tool version and host platform, in place of sessionInfo().
nlohmann::ordered_json session_metadata(const RecordOptions &options);

}  // namespace codeweft::recorder

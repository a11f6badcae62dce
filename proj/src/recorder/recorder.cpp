#include "codeweft/recorder/recorder.hpp"

#include <sys/utsname.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <istream>

#include "codeweft/error.hpp"
#include "codeweft/rparse/deparse.hpp"
#include "codeweft/rparse/parser.hpp"
#include "codeweft/version.hpp"

namespace codeweft::recorder {

using json = nlohmann::ordered_json;

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::BoundaryStart: return "boundary_start";
    case EventKind::BoundaryStop: return "boundary_stop";
    case EventKind::Expression: return "expression";
  }
  return "expression";
}

namespace {

EventKind parse_kind(const std::string &s) {
  if (s == "boundary_start") return EventKind::BoundaryStart;
  if (s == "boundary_stop") return EventKind::BoundaryStop;
  if (s == "expression") return EventKind::Expression;
  throw Error(ErrorCode::Schema, "unknown event kind '" + s + "'");
}

constexpr const char *kBoundaryExpr = "sessionInfo()";

}  // namespace

std::string format_rfc3339(std::chrono::system_clock::time_point t) {
  using namespace std::chrono;
  auto ms = duration_cast<milliseconds>(t.time_since_epoch()).count();
  std::time_t secs = static_cast<std::time_t>(ms / 1000);
  long frac = static_cast<long>(ms % 1000);
  if (frac < 0) {
    frac += 1000;
    --secs;
  }
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03ldZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, frac);
  return buf;
}

std::chrono::system_clock::time_point parse_rfc3339(const std::string &text) {
  std::tm tm{};
  int ms = 0;
  int n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3dZ", &tm.tm_year, &tm.tm_mon,
                      &tm.tm_mday, &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &ms);
  if (n < 6) throw Error(ErrorCode::Schema, "bad timestamp '" + text + "'");
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  std::time_t secs = timegm(&tm);
  return std::chrono::system_clock::time_point{} + std::chrono::seconds(secs) +
         std::chrono::milliseconds(ms);
}

SessionLog::SessionLog(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
  }
}

void SessionLog::append(const SessionEvent &event) {
  json obj;
  obj["kind"] = event_kind_name(event.kind);
  obj["dt"] = format_rfc3339(event.dt);
  obj["expr_text"] = event.expr_text;
  obj["meta"] = event.meta;
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write session log " + path_.string());
  out << obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write to session log " + path_.string() + " failed");
}

json session_metadata(const RecordOptions &options) {
  json meta;
  meta["tool"] = "codeweft";
  meta["version"] = kVersion;
  struct utsname u {};
  if (uname(&u) == 0) {
    meta["platform"] = std::string(u.sysname) + " " + u.release + " " + u.machine;
  } else {
    meta["platform"] = "unknown";
  }
  meta["value"] = options.value;
  return meta;
}

namespace {

class Recorder {
 public:
  Recorder(const Clock &clock, SessionLog &log) : clock_(clock), log_(log) {}

  void emit(SessionEvent event) {
    auto now = clock_();
    // keep timestamps non-decreasing even if the clock steps back
    event.dt = events_.empty() || now >= events_.back().dt ? now : events_.back().dt;
    log_.append(event);
    events_.push_back(std::move(event));
  }

  void expression(const std::string &text, rparse::Expr expr) {
    SessionEvent e;
    e.kind = EventKind::Expression;
    e.expr_text = text;
    e.expr = std::move(expr);
    emit(std::move(e));
  }

  void raw(const std::string &text, const std::string &reason) {
    SessionEvent e;
    e.kind = EventKind::Expression;
    e.expr_text = text;
    e.meta["parsed"] = false;
    e.meta["error"] = reason;
    emit(std::move(e));
  }

  // Logs every expression in a complete or invalid chunk.
  void flush_chunk(const std::string &chunk) {
    rparse::ProgramParse p = rparse::parse_program(chunk);
    if (!p.errors.empty()) {
      raw(trim_newlines(chunk), p.errors.front().to_string());
      return;
    }
    for (rparse::Expr &e : p.exprs) {
      std::string text = chunk.substr(e.span.begin_offset, e.span.end_offset - e.span.begin_offset);
      expression(text, std::move(e));
    }
  }

  static std::string trim_newlines(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
  }

  std::vector<SessionEvent> take() { return std::move(events_); }

 private:
  const Clock &clock_;
  SessionLog &log_;
  std::vector<SessionEvent> events_;
};

}  // namespace

std::vector<SessionEvent> record(std::istream &input, const Clock &clock, SessionLog &log,
                                 const RecordOptions &options) {
  Recorder rec(clock, log);
  json meta = session_metadata(options);

  SessionEvent start;
  start.kind = EventKind::BoundaryStart;
  start.expr_text = kBoundaryExpr;
  start.meta = meta;
  rec.emit(std::move(start));

  std::string pending;
  std::string line;
  while (std::getline(input, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pending += line;
    pending += '\n';
    switch (rparse::check_complete(pending)) {
      case rparse::Completeness::Incomplete: continue;
      case rparse::Completeness::Complete:
      case rparse::Completeness::Invalid: rec.flush_chunk(pending); break;
    }
    pending.clear();
  }
  if (pending.find_first_not_of(" \t\r\n") != std::string::npos) {
    rec.raw(Recorder::trim_newlines(pending), "input ended inside an incomplete expression");
  }

  SessionEvent stop;
  stop.kind = EventKind::BoundaryStop;
  stop.expr_text = kBoundaryExpr;
  stop.meta = meta;
  rec.emit(std::move(stop));
  return rec.take();
}

std::vector<SessionEvent> read_log(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingLog, "no session log at " + path.string());
  std::vector<SessionEvent> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
      SessionEvent e;
      e.kind = parse_kind(obj.at("kind").get<std::string>());
      e.dt = parse_rfc3339(obj.at("dt").get<std::string>());
      e.expr_text = obj.at("expr_text").get<std::string>();
      if (obj.contains("meta")) e.meta = obj["meta"];
      if (e.kind != EventKind::Expression || e.meta.value("parsed", true)) {
        try {
          e.expr = rparse::parse_expr(e.expr_text);
        } catch (const Error &) {
          e.expr.reset();
        }
      }
      out.push_back(std::move(e));
    } catch (const json::exception &ex) {
      // a torn final line from a crash is skipped; earlier lines stay readable
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw Error(ErrorCode::Schema,
                  path.string() + ":" + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return out;
}

Table log_table(const std::filesystem::path &path) {
  Table t({"expr", "value", "path", "contents", "selection", "dt"});
  for (const SessionEvent &e : read_log(path)) {
    t.add_row({e.expr ? rparse::deparse(*e.expr) : e.expr_text, std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
               format_rfc3339(e.dt)});
  }
  return t;
}

bool remove_log(const std::filesystem::path &path) {
  std::error_code ec;
  return std::filesystem::remove(path, ec);
}

std::filesystem::path default_log_path() {
  if (const char *p = std::getenv("CODEWEFT_LOG_PATH"); p != nullptr && *p != '\0') return p;
  if (const char *x = std::getenv("XDG_STATE_HOME"); x != nullptr && *x != '\0') {
    return std::filesystem::path(x) / "codeweft" / "session.jsonl";
  }
  const char *home = std::getenv("HOME");
  std::filesystem::path base = home != nullptr && *home != '\0' ? home : ".";
  return base / ".local" / "state" / "codeweft" / "session.jsonl";
}

}  // namespace codeweft::recorder

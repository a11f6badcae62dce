#include "codeweft/corpus/corpus.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>
#include <variant>

#include "codeweft/rparse/lexer.hpp"
#include "codeweft/rparse/parser.hpp"

namespace codeweft::corpus {

std::string SourceError::to_string() const {
  std::string out = source + ": " + std::string(error_code_name(code)) + ": ";
  if (diagnostic) return out + diagnostic->to_string();
  return out + message;
}

bool is_url(std::string_view source) {
  return source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0;
}

namespace {

void check_utf8(const std::string &source, std::string_view text) {
  std::size_t bad = rparse::find_invalid_utf8(text);
  if (bad != std::string_view::npos) {
    throw Error(ErrorCode::Io,
                source + ": not valid UTF-8 (byte offset " + std::to_string(bad) + ")");
  }
}

std::string read_local(const std::string &path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) throw Error(ErrorCode::Io, path + ": is a directory");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, path + ": read failed");
  return ss.str();
}

SourceError to_source_error(const std::string &source, const std::exception &e) {
  SourceError err{source, ErrorCode::Io, e.what(), std::nullopt, 0};
  if (const auto *http = dynamic_cast<const HttpError *>(&e)) {
    err.code = ErrorCode::Http;
    err.status = http->status();
  } else if (const auto *ce = dynamic_cast<const Error *>(&e)) {
    err.code = ce->code();
  }
  return err;
}

}  // namespace

std::string load_source(const std::string &source, const FetchOptions &options) {
  std::string text = is_url(source) ? fetch_url(source, options) : read_local(source);
  check_utf8(source, text);
  return text;
}

ReadResult parse_source(const std::string &source, std::string_view text) {
  ReadResult out;
  rparse::ProgramParse program = rparse::parse_program(text);
  for (rparse::Expr &e : program.exprs) {
    std::string slice(text.substr(e.span.begin_offset, e.span.end_offset - e.span.begin_offset));
    int line = e.span.start_line;
    out.records.push_back(CallRecord{source, line, std::move(e), std::move(slice)});
  }
  for (rparse::Diagnostic &d : program.errors) {
    out.errors.push_back(SourceError{source, d.code, d.message, std::move(d), 0});
  }
  return out;
}

namespace {

void append(ReadResult &into, ReadResult &&from) {
  for (auto &r : from.records) into.records.push_back(std::move(r));
  for (auto &e : from.errors) into.errors.push_back(std::move(e));
}

using Loaded = std::variant<std::string, SourceError>;

Loaded load_one(const std::string &source, const FetchOptions &options) {
  try {
    return load_source(source, options);
  } catch (const std::exception &e) {
    return to_source_error(source, e);
  }
}

ReadResult assemble(const std::vector<std::string> &sources, std::vector<Loaded> &loaded) {
  ReadResult out;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (auto *err = std::get_if<SourceError>(&loaded[i])) {
      out.errors.push_back(std::move(*err));
    } else {
      append(out, parse_source(sources[i], std::get<std::string>(loaded[i])));
    }
  }
  return out;
}

}  // namespace

ReadResult read_rfiles(const std::vector<std::string> &sources, const FetchOptions &options) {
  std::vector<Loaded> loaded;
  loaded.reserve(sources.size());
  for (const auto &s : sources) loaded.push_back(load_one(s, options));
  return assemble(sources, loaded);
}

ReadResult recital(std::string_view text) {
  ReadResult out;
  try {
    check_utf8("<string>", text);
  } catch (const Error &e) {
    out.errors.push_back(SourceError{"<string>", e.code(), e.what(), std::nullopt, 0});
    return out;
  }
  return parse_source("<string>", text);
}

std::vector<std::string> parse_manifest(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::string> read_manifest(const std::filesystem::path &manifest) {
  return parse_manifest(read_local(manifest.string()));
}

ReadResult fetch_sources(const std::vector<std::string> &sources, int concurrency,
                         const FetchOptions &options) {
  std::vector<Loaded> loaded(sources.size());
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(concurrency, 1)),
                                               sources.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < sources.size(); i = next++) {
      loaded[i] = load_one(sources[i], options);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  if (workers > 0) work();
  for (auto &t : pool) t.join();
  return assemble(sources, loaded);
}

ReadResult fetch_manifest(const std::filesystem::path &manifest, int concurrency,
                          const FetchOptions &options) {
  return fetch_sources(read_manifest(manifest), concurrency, options);
}

}  // namespace codeweft::corpus

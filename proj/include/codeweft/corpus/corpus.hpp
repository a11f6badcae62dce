#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codeweft/corpus/call_record.hpp"
#include "codeweft/error.hpp"
#include "codeweft/rparse/diagnostic.hpp"

namespace codeweft::corpus {

// A problem with one source. Syntax errors carry the diagnostic; HTTP
// failures carry the last status (0 when no response arrived).
struct SourceError {
  std::string source;
  ErrorCode code = ErrorCode::Io;
  std::string message;
  std::optional<rparse::Diagnostic> diagnostic;
  int status = 0;

  [[nodiscard]] std::string to_string() const;
};

struct ReadResult {
  std::vector<CallRecord> records;
  std::vector<SourceError> errors;
};

struct FetchOptions {
  int retries = 2;
  std::chrono::milliseconds backoff{250};  // doubled after each failed attempt
  std::chrono::seconds timeout{30};
};

bool is_url(std::string_view source);

// Raw text of a file or http(s) URL. Throws Error(Io) or Error(Http);
// non-UTF-8 content is Error(Io).
std::string load_source(const std::string &source, const FetchOptions &options = {});

// GET with the codeweft User-Agent; only status 200 is accepted. Transport
// failures, 429 and 5xx are retried `options.retries` times with
// exponential backoff. Throws HttpError carrying the final status.
std::string fetch_url(const std::string &url, const FetchOptions &options = {});

class HttpError : public Error {
 public:
  HttpError(const std::string &message, int status) : Error(ErrorCode::Http, message), status_(status) {}
  [[nodiscard]] int status() const noexcept { return status_; }

 private:
  int status_;
};

// Records for one source's text; syntax errors are appended to `errors`.
ReadResult parse_source(const std::string &source, std::string_view text);

// Reads every source in order. Errors in one source never affect another.
ReadResult read_rfiles(const std::vector<std::string> &sources, const FetchOptions &options = {});

// One record per top-level expression of `text`, file "<string>".
ReadResult recital(std::string_view text);

// Columns that only an evaluator could fill; emitted empty.
inline constexpr std::string_view kRecitalOutcomeColumns[] = {"value", "error", "output",
                                                              "warnings", "messages"};

// Sources listed in a manifest: one per line, `#` comments, blanks ignored.
std::vector<std::string> parse_manifest(std::string_view text);
std::vector<std::string> read_manifest(const std::filesystem::path &manifest);

// read_rfiles over the manifest with up to `concurrency` downloads at once;
// output order follows the manifest.
ReadResult fetch_sources(const std::vector<std::string> &sources, int concurrency,
                         const FetchOptions &options = {});
ReadResult fetch_manifest(const std::filesystem::path &manifest, int concurrency,
                          const FetchOptions &options = {});

}  // namespace codeweft::corpus

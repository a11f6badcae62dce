#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <thread>

#include "codeweft/corpus/corpus.hpp"
#include "codeweft/version.hpp"

namespace codeweft::corpus {

namespace {

struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string target;  // path and query
};

UrlParts split_url(const std::string &url) {
  std::size_t scheme_end = url.find("://");
  std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable(int status) { return status == 0 || status == 429 || status >= 500; }

}  // namespace

std::string fetch_url(const std::string &url, const FetchOptions &options) {
  if (!is_url(url)) throw HttpError(url + ": only http and https URLs are supported", 0);
  UrlParts parts = split_url(url);
  auto delay = options.backoff;
  int status = 0;
  std::string reason;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    httplib::Client client(parts.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    httplib::Headers headers{{"User-Agent", std::string(kUserAgent)}};
    auto res = client.Get(parts.target, headers);
    if (!res) {
      status = 0;
      reason = httplib::to_string(res.error());
    } else {
      status = res->status;
      if (status == 200) return res->body;
      reason = "HTTP status " + std::to_string(status);
    }
    if (!retryable(status)) break;
  }
  throw HttpError(url + ": " + reason, status);
}

}  // namespace codeweft::corpus

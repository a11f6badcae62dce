#include "codeweft/lexicon/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "codeweft/error.hpp"
#include "codeweft/table.hpp"

#ifndef CODEWEFT_DEFAULT_LEXICON_DIR
#define CODEWEFT_DEFAULT_LEXICON_DIR "data/lexicons"
#endif

namespace codeweft::lexicon {

bool is_category(std::string_view name) {
  return std::find(kCategories.begin(), kCategories.end(), name) != kCategories.end();
}

namespace {

std::string read_file(const std::filesystem::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool ranks_before(const ClassificationEntry &a, const ClassificationEntry &b) {
  if (a.score != b.score) return a.score > b.score;
  return a.classification < b.classification;
}

}  // namespace

std::vector<ClassificationEntry> parse_classifications(std::string_view csv,
                                                       const std::string &source) {
  if (csv.size() >= 3 && csv.substr(0, 3) == "\xEF\xBB\xBF") csv.remove_prefix(3);
  auto records = parse_csv(csv);
  const std::vector<std::string> header{"func", "classification", "lexicon", "score"};
  if (records.empty() || records.front() != header) {
    throw Error(ErrorCode::Schema, source + ": header must be func,classification,lexicon,score");
  }
  std::vector<ClassificationEntry> out;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto &rec = records[r];
    std::string where = source + ":" + std::to_string(r + 1);
    if (rec.size() == 1 && trim(rec[0]).empty()) continue;
    if (rec.size() != 4) {
      throw Error(ErrorCode::Schema, where + ": expected 4 fields, got " + std::to_string(rec.size()));
    }
    ClassificationEntry e{rec[0], rec[1], rec[2], 0.0};
    if (e.func.empty() || e.lexicon.empty()) {
      throw Error(ErrorCode::Schema, where + ": func and lexicon must be non-empty");
    }
    if (!is_category(e.classification)) {
      throw Error(ErrorCode::UnknownCategory, where + ": unknown category '" + e.classification + "'");
    }
    std::string score = trim(rec[3]);
    const char *end = score.data() + score.size();
    auto res = std::from_chars(score.data(), end, e.score);
    if (score.empty() || res.ec != std::errc() || res.ptr != end) {
      throw Error(ErrorCode::Schema, where + ": score '" + rec[3] + "' is not a number");
    }
    if (!(e.score > 0.0 && e.score <= 1.0)) {
      throw Error(ErrorCode::ScoreOutOfRange, where + ": score " + score + " is outside (0, 1]");
    }
    if (!seen.emplace(e.func, e.classification, e.lexicon).second) {
      throw Error(ErrorCode::Schema, where + ": duplicate entry for (" + e.func + ", " +
                                         e.classification + ", " + e.lexicon + ")");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ClassificationEntry> select(const std::vector<ClassificationEntry> &entries,
                                        const LoadOptions &options) {
  std::vector<ClassificationEntry> filtered;
  if (options.which) {
    for (const auto &e : entries) {
      if (e.lexicon == *options.which) filtered.push_back(e);
    }
    if (filtered.empty()) {
      throw Error(ErrorCode::UnknownLexicon, "unknown lexicon '" + *options.which + "'");
    }
  } else {
    filtered = entries;
  }
  if (options.include_duplicates) return filtered;

  std::map<std::pair<std::string, std::string>, std::size_t> best;
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    auto key = std::make_pair(filtered[i].func, filtered[i].lexicon);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, i);
    } else if (ranks_before(filtered[i], filtered[it->second])) {
      it->second = i;
    }
  }
  std::vector<ClassificationEntry> out;
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    if (best.at({filtered[i].func, filtered[i].lexicon}) == i) out.push_back(filtered[i]);
  }
  return out;
}

std::vector<ClassificationEntry> load_classifications(const std::filesystem::path &file,
                                                      const LoadOptions &options) {
  return select(parse_classifications(read_file(file), file.string()), options);
}

std::vector<ClassifiedToken> classify(const std::vector<unnest::FuncToken> &tokens,
                                      const std::vector<ClassificationEntry> &entries) {
  std::map<std::string, std::size_t> lexicon_rank;
  for (const auto &e : entries) lexicon_rank.emplace(e.lexicon, lexicon_rank.size());

  std::map<std::string, std::vector<const ClassificationEntry *>> by_func;
  for (const auto &e : entries) by_func[e.func].push_back(&e);
  for (auto &[func, list] : by_func) {
    std::stable_sort(list.begin(), list.end(), [&](const auto *a, const auto *b) {
      std::size_t ra = lexicon_rank.at(a->lexicon);
      std::size_t rb = lexicon_rank.at(b->lexicon);
      if (ra != rb) return ra < rb;
      return ranks_before(*a, *b);
    });
  }

  std::vector<ClassifiedToken> out;
  for (const auto &t : tokens) {
    auto it = by_func.find(t.func);
    if (it == by_func.end()) continue;
    for (const ClassificationEntry *e : it->second) {
      out.push_back(ClassifiedToken{t, e->classification, e->lexicon, e->score});
    }
  }
  return out;
}

StopFuncList parse_stopfuncs(std::string_view text) {
  StopFuncList out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    // `#` opens a comment at line start or after a blank
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line = line.substr(0, i);
        break;
      }
    }
    std::string name = trim(line);
    if (!name.empty()) out.funcs.insert(std::move(name));
  }
  return out;
}

StopFuncList load_stopfuncs(const std::filesystem::path &file) {
  return parse_stopfuncs(read_file(file));
}

std::vector<unnest::FuncToken> remove_stopfuncs(const std::vector<unnest::FuncToken> &tokens,
                                                const StopFuncList &stops) {
  std::vector<unnest::FuncToken> out;
  for (const auto &t : tokens) {
    if (!stops.contains(t.func)) out.push_back(t);
  }
  return out;
}

std::vector<NormalizationIssue> check_normalization(const std::vector<ClassificationEntry> &entries,
                                                    double tolerance) {
  std::map<std::pair<std::string, std::string>, double> sums;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto &e : entries) {
    auto key = std::make_pair(e.func, e.lexicon);
    if (sums.emplace(key, 0.0).second) order.push_back(key);
    sums[key] += e.score;
  }
  std::vector<NormalizationIssue> out;
  for (const auto &key : order) {
    double s = sums.at(key);
    if (std::fabs(s - 1.0) > tolerance) out.push_back({key.first, key.second, s});
  }
  return out;
}

std::filesystem::path lexicon_dir(const std::optional<std::filesystem::path> &override_dir) {
  if (override_dir) return *override_dir;
  if (const char *env = std::getenv("CODEWEFT_LEXICON_PATH"); env != nullptr && *env != '\0') {
    return env;
  }
  return CODEWEFT_DEFAULT_LEXICON_DIR;
}

}  // namespace codeweft::lexicon

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "codeweft/unnest/unnest.hpp"

namespace codeweft::lexicon {

inline constexpr std::array<std::string_view, 9> kCategories{
    "setup",        "exploratory",   "data cleaning", "modeling", "evaluation",
    "visualization", "communication", "import",        "export"};

inline constexpr std::array<std::string_view, 2> kBundledLexicons{"crowdsource", "leeklab"};

bool is_category(std::string_view name);

struct ClassificationEntry {
  std::string func;
  std::string classification;
  std::string lexicon;
  double score = 1.0;
};

struct LoadOptions {
  std::optional<std::string> which;  // keep only this lexicon
  bool include_duplicates = true;    // false keeps the top class per (func, lexicon)
};

// Parses the `func,classification,lexicon,score` CSV. Throws Error with
// Schema, UnknownCategory or ScoreOutOfRange; `source` names the input in
// messages.
std::vector<ClassificationEntry> parse_classifications(std::string_view csv,
                                                       const std::string &source = "<lexicon>");

// Applies the lexicon filter and duplicate selection. Entry order is kept;
// throws Error(UnknownLexicon) when `which` names no lexicon in `entries`.
std::vector<ClassificationEntry> select(const std::vector<ClassificationEntry> &entries,
                                        const LoadOptions &options);

// parse_classifications + select over a file.
std::vector<ClassificationEntry> load_classifications(const std::filesystem::path &file,
                                                      const LoadOptions &options = {});

struct ClassifiedToken {
  unnest::FuncToken token;
  std::string classification;
  std::string lexicon;
  double score = 1.0;
};

// Inner join on func. Tokens keep their order; a token's matches follow
// the lexicon order of `entries`, then descending score, then category.
std::vector<ClassifiedToken> classify(const std::vector<unnest::FuncToken> &tokens,
                                      const std::vector<ClassificationEntry> &entries);

struct StopFuncList {
  std::set<std::string> funcs;
  [[nodiscard]] bool contains(const std::string &func) const { return funcs.count(func) != 0; }
};

// Newline-delimited names; `#` starts a comment; surrounding blanks ignored.
StopFuncList parse_stopfuncs(std::string_view text);
StopFuncList load_stopfuncs(const std::filesystem::path &file);

// Tokens whose func is not a stop function, in order.
std::vector<unnest::FuncToken> remove_stopfuncs(const std::vector<unnest::FuncToken> &tokens,
                                                const StopFuncList &stops);

struct NormalizationIssue {
  std::string func;
  std::string lexicon;
  double sum = 0;
};

// (func, lexicon) groups whose scores do not sum to 1 within `tolerance`.
std::vector<NormalizationIssue> check_normalization(const std::vector<ClassificationEntry> &entries,
                                                    double tolerance = 0.005);

// Lexicon directory: `override_dir` if given, else $CODEWEFT_LEXICON_PATH,
// else the bundled data directory.
std::filesystem::path lexicon_dir(const std::optional<std::filesystem::path> &override_dir = {});

inline constexpr std::string_view kClassificationsFile = "classifications.csv";
inline constexpr std::string_view kStopfuncsFile = "stopfuncs.txt";

}  // namespace codeweft::lexicon

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "codeweft/corpus/corpus.hpp"
#include "codeweft/error.hpp"
#include "codeweft/lexicon/lexicon.hpp"
#include "codeweft/unnest/unnest.hpp"

using namespace codeweft;
using namespace codeweft::lexicon;
using codeweft::unnest::FuncToken;

namespace {

const std::string kLexDir = std::string(CODEWEFT_TEST_DATA_DIR) + "/lexicons";
const std::string kExamples = std::string(CODEWEFT_TEST_DATA_DIR) + "/examples";

std::vector<ClassificationEntry> bundled(const LoadOptions &opts = {}) {
  return load_classifications(kLexDir + "/classifications.csv", opts);
}

StopFuncList bundled_stops() { return load_stopfuncs(kLexDir + "/stopfuncs.txt"); }

std::vector<FuncToken> example_tokens() {
  auto res = corpus::read_rfiles({kExamples + "/example_analysis.R", kExamples + "/example_plot.R"});
  REQUIRE(res.errors.empty());
  return unnest::unnest_corpus(res.records);
}

ErrorCode code_of(std::string_view csv) {
  try {
    parse_classifications(csv);
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

FuncToken tok(std::string func) {
  FuncToken t;
  t.func = std::move(func);
  t.file = "t.R";
  return t;
}

const char *kHeader = "func,classification,lexicon,score\n";

}  // namespace

TEST_CASE("bundled library entries") {
  auto all = bundled({std::string("crowdsource"), true});
  std::vector<ClassificationEntry> lib;
  for (const auto &e : all) {
    if (e.func == "library") lib.push_back(e);
  }
  REQUIRE(lib.size() == 9);
  CHECK(lib[0].classification == "setup");
  CHECK(lib[0].score == doctest::Approx(0.687));
  CHECK(lib[1].classification == "import");
  CHECK(lib[1].score == doctest::Approx(0.213));
  CHECK(lib[2].classification == "visualization");
  CHECK(lib[2].score == doctest::Approx(0.0339));
  CHECK(lib[8].classification == "export");
  CHECK(lib[8].score == doctest::Approx(0.00111));
}

TEST_CASE("bundled scores are normalised") {
  auto all = bundled();
  CHECK(check_normalization(all).empty());
  for (const auto &e : all) {
    CHECK(is_category(e.classification));
    CHECK(e.score > 0.0);
    CHECK(e.score <= 1.0);
  }
  std::set<std::string> lexicons;
  for (const auto &e : all) lexicons.insert(e.lexicon);
  CHECK(lexicons == std::set<std::string>{"crowdsource", "leeklab"});
}

TEST_CASE("bundled stop functions") {
  auto stops = bundled_stops();
  for (const char *f : {"<-", "=", "%>%", "(", "{"}) CHECK(stops.contains(f));
  CHECK_FALSE(stops.contains("library"));
}

TEST_CASE("best class selection") {
  auto best = bundled({std::string("crowdsource"), false});
  std::vector<ClassificationEntry> lib;
  for (const auto &e : best) {
    if (e.func == "library") lib.push_back(e);
  }
  REQUIRE(lib.size() == 1);
  CHECK(lib[0].classification == "setup");

  auto all = bundled();
  auto picked = select(all, LoadOptions{std::nullopt, false});
  std::set<std::pair<std::string, std::string>> groups;
  for (const auto &e : all) groups.insert({e.func, e.lexicon});
  CHECK(picked.size() == groups.size());
  for (const auto &p : picked) {
    for (const auto &e : all) {
      if (e.func == p.func && e.lexicon == p.lexicon) CHECK(p.score >= e.score);
    }
  }
}

TEST_CASE("best class ties break alphabetically") {
  std::string csv = std::string(kHeader) + "f,visualization,x,0.5\nf,modeling,x,0.5\n";
  auto entries = parse_classifications(csv);
  auto best = select(entries, LoadOptions{std::nullopt, false});
  REQUIRE(best.size() == 1);
  CHECK(best[0].classification == "modeling");
}

TEST_CASE("single entry lexicon is unchanged by either flag") {
  std::string csv = std::string(kHeader) + "f,setup,x,1\n";
  auto entries = parse_classifications(csv);
  for (bool dup : {true, false}) {
    auto out = select(entries, LoadOptions{std::nullopt, dup});
    REQUIRE(out.size() == 1);
    CHECK(out[0].func == "f");
    CHECK(out[0].score == 1.0);
  }
}

TEST_CASE("lexicon errors") {
  CHECK(code_of("func,class,lexicon,score\n") == ErrorCode::Schema);
  CHECK(code_of(std::string(kHeader) + "f,setup,x\n") == ErrorCode::Schema);
  CHECK(code_of(std::string(kHeader) + "f,setup,x,abc\n") == ErrorCode::Schema);
  CHECK(code_of(std::string(kHeader) + "f,setup,x,0.5\nf,setup,x,0.5\n") == ErrorCode::Schema);
  CHECK(code_of(std::string(kHeader) + "f,cooking,x,1\n") == ErrorCode::UnknownCategory);
  CHECK(code_of(std::string(kHeader) + "f,Setup,x,1\n") == ErrorCode::UnknownCategory);
  CHECK(code_of(std::string(kHeader) + "f,setup,x,0\n") == ErrorCode::ScoreOutOfRange);
  CHECK(code_of(std::string(kHeader) + "f,setup,x,1.5\n") == ErrorCode::ScoreOutOfRange);
  try {
    bundled({std::string("nosuch"), true});
    FAIL("expected UnknownLexicon");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::UnknownLexicon);
  }
}

TEST_CASE("byte order mark and quoted fields") {
  std::string csv = "\xEF\xBB\xBF" + std::string(kHeader) + "\"a,b\",setup,x,1\n";
  auto entries = parse_classifications(csv);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].func == "a,b");
}

TEST_CASE("normalisation check flags bad groups") {
  std::string csv = std::string(kHeader) + "f,setup,x,0.5\nf,import,x,0.4\ng,setup,x,1\n";
  auto issues = check_normalization(parse_classifications(csv));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].func == "f");
  CHECK(issues[0].sum == doctest::Approx(0.9));
}

TEST_CASE("example joins") {
  auto tokens = example_tokens();
  REQUIRE(tokens.size() == 35);
  auto both = classify(tokens, bundled());
  CHECK(both.size() == 322);
  std::vector<std::pair<std::string, double>> prefix;
  for (std::size_t i = 0; i < 10; ++i) prefix.emplace_back(both[i].classification, both[i].score);
  CHECK(prefix[0].first == "setup");
  CHECK(prefix[8].first == "export");
  CHECK(both[9].lexicon == "leeklab");
  CHECK(both[9].classification == "setup");
  CHECK(both[9].score == doctest::Approx(0.994));

  auto crowd = classify(tokens, bundled({std::string("crowdsource"), true}));
  CHECK(crowd.size() == 271);

  auto crowd_best = bundled({std::string("crowdsource"), false});
  CHECK(classify(tokens, crowd_best).size() == 33);

  auto final_rows = classify(remove_stopfuncs(tokens, bundled_stops()), crowd_best);
  std::vector<std::pair<std::string, std::string>> got;
  for (const auto &r : final_rows) got.emplace_back(r.token.func, r.classification);
  std::vector<std::pair<std::string, std::string>> want{
      {"library", "setup"},         {"library", "setup"},          {"mutate", "data cleaning"},
      {"select", "data cleaning"},  {"options", "setup"},          {"summary", "exploratory"},
      {"plot", "visualization"},    {"library", "setup"},          {"select", "data cleaning"},
      {"filter", "data cleaning"},  {"is.na", "data cleaning"},    {"is.na", "data cleaning"},
      {"ggplot", "visualization"},  {"aes", "visualization"},      {"geom_point", "visualization"}};
  CHECK(got == want);
}

TEST_CASE("join count law and commutation on random tokens") {
  auto entries = bundled();
  auto stops = bundled_stops();
  std::vector<std::string> vocab{"library", "<-", "%>%", "mutate", "(", "unknown", "plot", "{",
                                 "filter", "=", "zzz", ":", "[[", "geom_point"};
  std::mt19937 rng(2024);
  for (int round = 0; round < 300; ++round) {
    std::vector<FuncToken> tokens;
    int n = std::uniform_int_distribution<int>(0, 40)(rng);
    for (int i = 0; i < n; ++i) {
      tokens.push_back(tok(vocab[std::uniform_int_distribution<std::size_t>(0, vocab.size() - 1)(rng)]));
      tokens.back().line = i + 1;
    }

    std::size_t expected = 0;
    for (const auto &t : tokens) {
      expected += static_cast<std::size_t>(std::count_if(
          entries.begin(), entries.end(), [&](const auto &e) { return e.func == t.func; }));
    }
    auto joined = classify(tokens, entries);
    CHECK(joined.size() == expected);

    std::vector<FuncToken> kept;
    for (const auto &t : tokens) {
      if (stops.funcs.find(t.func) == stops.funcs.end()) kept.push_back(t);
    }
    auto removed = remove_stopfuncs(tokens, stops);
    REQUIRE(removed.size() == kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      CHECK(removed[i].func == kept[i].func);
      CHECK(removed[i].line == kept[i].line);
    }

    auto a = classify(removed, entries);
    std::vector<ClassifiedToken> b;
    for (const auto &r : joined) {
      if (!stops.contains(r.token.func)) b.push_back(r);
    }
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].token.func == b[i].token.func);
      CHECK(a[i].token.line == b[i].token.line);
      CHECK(a[i].classification == b[i].classification);
      CHECK(a[i].lexicon == b[i].lexicon);
    }
  }
}

TEST_CASE("empty stop list is the identity") {
  std::vector<FuncToken> tokens{tok("a"), tok("<-"), tok("b")};
  auto out = remove_stopfuncs(tokens, StopFuncList{});
  REQUIRE(out.size() == 3);
  CHECK(out[1].func == "<-");
}

TEST_CASE("stop function file parsing") {
  auto stops = parse_stopfuncs("# header\n<-\n  %>%  \n\n#x\nf # trailing\n");
  CHECK(stops.funcs == std::set<std::string>{"<-", "%>%", "f"});
}

TEST_CASE("no matches yield no rows") {
  CHECK(classify({tok("nope")}, bundled()).empty());
}

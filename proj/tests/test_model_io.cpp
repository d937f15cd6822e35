#include "bpetrim/model_io.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "bpetrim/errors.hpp"
#include "testutil.hpp"

namespace bpetrim {
namespace {

using Kind = ParseError::Kind;
using testutil::ization_counts;
using testutil::ization_model;
using testutil::make_word;
using testutil::toy_table;

std::string merges_bytes(const BpeModel& model) {
  std::ostringstream out;
  write_merges(model, out);
  return out.str();
}

ParseError capture_parse_error(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& error) {
    return error;
  }
  ADD_FAILURE() << "expected a ParseError";
  return ParseError(Kind::kMalformedLine, "unreachable", 0);
}

TEST(WriteMerges, EmptyModelIsHeaderOnly) {
  BpeModel model = learn(toy_table(), 11);
  EXPECT_EQ(merges_bytes(model), "#version: 0.2\n");
}

TEST(WriteMerges, ToyModelGoldenBytes) {
  BpeModel model = learn(toy_table(), 24);
  EXPECT_EQ(merges_bytes(model),
            "#version: 0.2\n"
            "e s\n"
            "es t</w>\n"
            "l o\n"
            "e w\n"
            "ew est</w>\n"
            "n ewest</w>\n"
            "lo w</w>\n"
            "d est</w>\n"
            "i dest</w>\n"
            "w idest</w>\n"
            "e r</w>\n"
            "lo w\n"
            "low er</w>\n");
}

TEST(ReadMerges, RoundTripsToyModelWithoutExtraAlphabet) {
  // Every toy atomic participates in some merge, so the file alone
  // reconstructs the full model.
  BpeModel model = learn(toy_table(), 24);
  std::istringstream in(merges_bytes(model));
  EXPECT_EQ(read_merges(in), model);
}

TEST(ReadMerges, RoundTripsRandomModelsWithExtraAlphabet) {
  std::mt19937 rng(1515);
  for (int trial = 0; trial < 40; ++trial) {
    WordFrequencyTable table = testutil::random_table(rng, 15, 10, 9);
    BpeModel model = learn(
        table, table.alphabet().size() +
                   std::uniform_int_distribution<std::size_t>(0, 12)(rng));
    std::istringstream in(merges_bytes(model));
    // Unmerged atomics are not representable in the file; supplying the
    // alphabet restores them.
    ASSERT_EQ(read_merges(in, model.alphabet()), model) << "trial " << trial;
  }
}

TEST(ReadMerges, WriterIsByteDeterministic) {
  BpeModel model = learn(toy_table(), 24);
  EXPECT_EQ(merges_bytes(model), merges_bytes(model));
}

TEST(ReadMerges, CrlfLinesParse) {
  std::string bytes = merges_bytes(learn(toy_table(), 24));
  std::string crlf;
  for (char c : bytes) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  std::istringstream in(crlf);
  EXPECT_EQ(read_merges(in), learn(toy_table(), 24));
}

TEST(ReadMerges, CrossToolGoldenFileTokenizesIdentically) {
  // tests/data/toy_subword_nmt.codes follows the subword-nmt tool's training
  // semantics (its count tie-break prefers the largest pair, so the merge
  // list differs from ours); parsing it must reproduce its tokenizations.
  std::ifstream in(testutil::data_dir() / "toy_subword_nmt.codes");
  ASSERT_TRUE(in.is_open());
  BpeModel model = read_merges(in, {"r</w>"});

  auto rendered = [&model](std::string_view raw) {
    return render_tokens(tokenize_word(model, make_word(raw)), "</w>");
  };
  EXPECT_EQ(rendered("low"), "low");
  EXPECT_EQ(rendered("lower"), "lo@@ w@@ e@@ r");
  EXPECT_EQ(rendered("newest"), "newest");
  EXPECT_EQ(rendered("widest"), "widest");
}

TEST(ReadMerges, HeaderErrors) {
  std::istringstream empty("");
  ParseError missing = capture_parse_error([&] { read_merges(empty); });
  EXPECT_EQ(missing.kind(), Kind::kUnknownHeader);
  EXPECT_EQ(missing.line(), 1u);

  std::istringstream wrong("#version: 0.1\na b\n");
  ParseError unknown = capture_parse_error([&] { read_merges(wrong); });
  EXPECT_EQ(unknown.kind(), Kind::kUnknownHeader);
  EXPECT_EQ(unknown.line(), 1u);
  EXPECT_NE(std::string(unknown.what()).find("line 1"), std::string::npos);
}

TEST(ReadMerges, MalformedLines) {
  for (const char* bad : {"ab\n", " b\n", "a \n", "a b c\n"}) {
    std::istringstream in(std::string("#version: 0.2\na b\n") + bad);
    ParseError error = capture_parse_error([&] { read_merges(in); });
    EXPECT_EQ(error.kind(), Kind::kMalformedLine) << bad;
    EXPECT_EQ(error.line(), 3u) << bad;
  }
}

TEST(ReadMerges, UndefinedMultiCharComponent) {
  // "xy" was never produced by an earlier rule and is not atomic-shaped.
  std::istringstream in("#version: 0.2\nxy z\n");
  ParseError error = capture_parse_error([&] { read_merges(in); });
  EXPECT_EQ(error.kind(), Kind::kUndefinedToken);
  EXPECT_EQ(error.line(), 2u);
}

TEST(ReadMerges, DuplicateMergedToken) {
  std::istringstream in("#version: 0.2\na b\na b\n");
  ParseError error = capture_parse_error([&] { read_merges(in); });
  EXPECT_EQ(error.kind(), Kind::kDuplicateToken);
  EXPECT_EQ(error.line(), 3u);
}

TEST(ReadMerges, RejectsNonAtomicExtraAlphabet) {
  std::istringstream in("#version: 0.2\n");
  EXPECT_THROW(read_merges(in, {"ab"}), InvalidArgumentError);
}

TEST(VocabFile, GoldenOrderingAndRoundTrip) {
  TokenCounts counts;
  counts["b"] = 5;
  counts["a"] = 5;
  counts["zz"] = 9;
  counts["rare"] = 0;
  std::ostringstream out;
  write_vocab(counts, out);
  EXPECT_EQ(out.str(), "zz 9\na 5\nb 5\nrare 0\n");

  std::istringstream in(out.str());
  TokenCounts parsed = read_vocab(in);
  EXPECT_EQ(parsed.size(), counts.size());
  for (const auto& [token, count] : counts) EXPECT_EQ(parsed.at(token), count);
}

TEST(VocabFile, RoundTripsModelCounts) {
  BpeModel model = learn(toy_table(), 24);
  TokenCounts counts = token_counts(model, toy_table());
  std::ostringstream out;
  write_vocab(counts, out);
  std::istringstream in(out.str());
  TokenCounts parsed = read_vocab(in);
  EXPECT_EQ(parsed.size(), counts.size());
  for (const auto& [token, count] : counts) EXPECT_EQ(parsed.at(token), count);
}

TEST(VocabFile, ParseErrors) {
  std::istringstream no_space("token\n");
  EXPECT_EQ(capture_parse_error([&] { read_vocab(no_space); }).kind(),
            Kind::kMalformedLine);

  std::istringstream bad_count("token x1\n");
  EXPECT_EQ(capture_parse_error([&] { read_vocab(bad_count); }).kind(),
            Kind::kMalformedLine);

  std::istringstream spaced_token("to ken 3\n");
  EXPECT_EQ(capture_parse_error([&] { read_vocab(spaced_token); }).kind(),
            Kind::kMalformedLine);

  std::istringstream duplicate("a 1\na 2\n");
  ParseError error = capture_parse_error([&] { read_vocab(duplicate); });
  EXPECT_EQ(error.kind(), Kind::kDuplicateToken);
  EXPECT_EQ(error.line(), 2u);
}

TEST(TrimManifest, GoldenBytes) {
  TrimmedModel trimmed = trim(ization_model(), ization_counts(), TrimSpec{100, false});
  std::ostringstream out;
  write_trim_manifest(trimmed, out);
  EXPECT_EQ(out.str(),
            "#trimmed-vocab: 1\n"
            "#threshold: 100\n"
            "#preserve-terminals: false\n"
            "at\n"
            "ati\n"
            "atio\n"
            "iz\n"
            "ization</w>\n"
            "to\n"
            "tok\n"
            "toke\n");
}

TEST(TrimManifest, EmptyRemovedSetRoundTrips) {
  BpeModel model = learn(toy_table(), 12);
  TrimmedModel trimmed = make_trimmed(model, {}, TrimSpec{0, true});
  std::ostringstream out;
  write_trim_manifest(trimmed, out);
  std::istringstream in(out.str());
  EXPECT_EQ(read_trim_manifest(in, model), trimmed);
}

TEST(TrimManifest, CraftedTrimSetRoundTrips) {
  TrimmedModel trimmed = trim(ization_model(), ization_counts(), TrimSpec{100, false});
  std::ostringstream out;
  write_trim_manifest(trimmed, out);
  std::istringstream in(out.str());
  TrimmedModel reread = read_trim_manifest(in, ization_model());
  EXPECT_EQ(reread, trimmed);
  EXPECT_EQ(tokenize_trimmed(reread, make_word("tokenization")).tokens,
            (std::vector<std::string>{"token", "i", "z", "ation</w>"}));
}

TEST(TrimManifest, RandomSpecsRoundTrip) {
  std::mt19937 rng(1616);
  for (int trial = 0; trial < 40; ++trial) {
    WordFrequencyTable table = testutil::random_table(rng, 15, 10, 9);
    BpeModel model = learn(table, table.alphabet().size() + 10);
    TokenCounts counts = token_counts(model, table);
    TrimSpec spec{std::uniform_int_distribution<std::uint64_t>(0, 12)(rng),
                  static_cast<bool>(std::uniform_int_distribution<int>(0, 1)(rng))};
    TrimmedModel trimmed = trim(model, counts, spec);
    std::ostringstream out;
    write_trim_manifest(trimmed, out);
    std::istringstream in(out.str());
    ASSERT_EQ(read_trim_manifest(in, model), trimmed) << "trial " << trial;
  }
}

TEST(TrimManifest, ForeignRemovedTokenIsInconsistent) {
  BpeModel model = learn(toy_table(), 12);
  std::istringstream in(
      "#trimmed-vocab: 1\n#threshold: 5\n#preserve-terminals: false\nzzz\n");
  EXPECT_THROW(read_trim_manifest(in, model), ConsistencyError);
}

TEST(TrimManifest, HeaderAndBodyErrors) {
  BpeModel model = learn(toy_table(), 12);

  std::istringstream bad_header("#something-else\n");
  EXPECT_EQ(capture_parse_error([&] { read_trim_manifest(bad_header, model); }).kind(),
            Kind::kUnknownHeader);

  std::istringstream no_threshold("#trimmed-vocab: 1\n");
  ParseError missing = capture_parse_error([&] { read_trim_manifest(no_threshold, model); });
  EXPECT_EQ(missing.kind(), Kind::kMalformedLine);
  EXPECT_EQ(missing.line(), 2u);

  std::istringstream wrong_order(
      "#trimmed-vocab: 1\n#preserve-terminals: false\n#threshold: 5\n");
  ParseError swapped =
      capture_parse_error([&] { read_trim_manifest(wrong_order, model); });
  EXPECT_EQ(swapped.kind(), Kind::kMalformedLine);
  EXPECT_EQ(swapped.line(), 2u);

  std::istringstream bad_flag(
      "#trimmed-vocab: 1\n#threshold: 5\n#preserve-terminals: maybe\n");
  ParseError flag = capture_parse_error([&] { read_trim_manifest(bad_flag, model); });
  EXPECT_EQ(flag.kind(), Kind::kMalformedLine);
  EXPECT_EQ(flag.line(), 3u);

  std::istringstream duplicate(
      "#trimmed-vocab: 1\n#threshold: 5\n#preserve-terminals: false\nes\nes\n");
  ParseError dup = capture_parse_error([&] { read_trim_manifest(duplicate, model); });
  EXPECT_EQ(dup.kind(), Kind::kDuplicateToken);
  EXPECT_EQ(dup.line(), 5u);
}

}  // namespace
}  // namespace bpetrim

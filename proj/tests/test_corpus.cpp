#include "bpetrim/corpus.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "bpetrim/errors.hpp"
#include "testutil.hpp"

namespace bpetrim {
namespace {

using testutil::make_word;

Word W(std::initializer_list<const char*> symbols) {
  Word out;
  for (const char* s : symbols) out.emplace_back(s);
  return out;
}

TEST(SplitWord, FusesMarkerOntoFinalCharacter) {
  EXPECT_EQ(make_word("low"), W({"l", "o", "w</w>"}));
  EXPECT_EQ(make_word("a"), W({"a</w>"}));
}

TEST(SplitWord, SplitsAtCodepointBoundaries) {
  // é is two bytes, 汉 is three; both stay single symbols.
  EXPECT_EQ(make_word("\xc3\xa9x"), W({"\xc3\xa9", "x</w>"}));
  EXPECT_EQ(make_word("x\xc3\xa9"), W({"x", "\xc3\xa9</w>"}));
  EXPECT_EQ(make_word("\xe6\xb1\x89"), W({"\xe6\xb1\x89</w>"}));
}

TEST(SplitWord, InvalidBytesBecomeSingleByteSymbols) {
  // A lone continuation byte and a truncated lead byte each stand alone.
  EXPECT_EQ(make_word("a\x80"
                      "b"),
            W({"a", "\x80", "b</w>"}));
  EXPECT_EQ(make_word("a\xc3"), W({"a", "\xc3</w>"}));
}

TEST(SplitWord, RejectsEmptyAndMarkerCollisions) {
  EXPECT_THROW(make_word(""), InvalidArgumentError);
  EXPECT_THROW(make_word("a</w>b"), ConsistencyError);
  PretokenConfig no_marker;
  no_marker.end_of_word_marker.clear();
  EXPECT_THROW(split_word("a", no_marker), InvalidArgumentError);
}

TEST(SplitLineWords, SplitsOnUnicodeWhitespace) {
  PretokenConfig config;
  // Tab, repeated spaces, NBSP, NEL, ideographic space.
  std::string line =
      "one\ttwo  three\xc2\xa0 four\xc2\x85"
      "five\xe3\x80\x80six";
  EXPECT_EQ(split_line_words(line, config),
            (std::vector<std::string>{"one", "two", "three", "four", "five", "six"}));
  EXPECT_TRUE(split_line_words("   \t ", config).empty());
}

TEST(SplitLineWords, LowercaseFoldsAsciiOnly) {
  PretokenConfig config;
  config.lowercase = true;
  // Ä (U+00C4) is left alone: no Unicode case folding, bytes kept as-is.
  EXPECT_EQ(split_line_words("LOW \xc3\x84rm", config),
            (std::vector<std::string>{"low", "\xc3\x84rm"}));
}

TEST(Flatten, ConcatenatesSymbols) {
  EXPECT_EQ(flatten(make_word("low")), "low</w>");
  EXPECT_EQ(flatten(Word{}), "");
}

TEST(LooksAtomic, AcceptsSingleCodepointsWithOptionalMarker) {
  EXPECT_TRUE(looks_atomic("a", "</w>"));
  EXPECT_TRUE(looks_atomic("a</w>", "</w>"));
  EXPECT_TRUE(looks_atomic("\xc3\xa9", "</w>"));
  EXPECT_TRUE(looks_atomic("\xc3\xa9</w>", "</w>"));
  EXPECT_FALSE(looks_atomic("ab", "</w>"));
  EXPECT_FALSE(looks_atomic("ab</w>", "</w>"));
  EXPECT_TRUE(looks_atomic("\x80", "</w>"));    // invalid byte, one symbol
  EXPECT_FALSE(looks_atomic("a\x80", "</w>"));  // two symbols once validated
  EXPECT_FALSE(looks_atomic("</w>", "</w>"));
  EXPECT_FALSE(looks_atomic("", "</w>"));
}

TEST(WordFrequencyTable, AddAggregatesAndCollectsAlphabet) {
  WordFrequencyTable table;
  table.add(make_word("low"), 2);
  table.add(make_word("low"), 1);
  table.add(make_word("a"), 4);
  EXPECT_EQ(table.entries().at(make_word("low")), 3u);
  EXPECT_EQ(table.entries().at(make_word("a")), 4u);
  EXPECT_EQ(table.total_words(), 7u);
  EXPECT_EQ(table.alphabet(), (std::set<Symbol>{"a</w>", "l", "o", "w</w>"}));
}

TEST(WordFrequencyTable, RejectsEmptyWordsAndZeroCounts) {
  WordFrequencyTable table;
  EXPECT_THROW(table.add(Word{}, 1), InvalidArgumentError);
  EXPECT_THROW(table.add(make_word("a"), 0), InvalidArgumentError);
}

TEST(Ingest, EmptyInputGivesEmptyTable) {
  std::istringstream in("");
  WordFrequencyTable table = ingest(in);
  EXPECT_TRUE(table.empty());
  EXPECT_TRUE(table.alphabet().empty());
  EXPECT_EQ(table.total_words(), 0u);
}

TEST(Ingest, CountsAcrossLines) {
  std::istringstream in("low low\nlow");
  WordFrequencyTable table = ingest(in);
  EXPECT_EQ(table.entries().size(), 1u);
  EXPECT_EQ(table.entries().at(make_word("low")), 3u);
  EXPECT_EQ(table.alphabet(), (std::set<Symbol>{"l", "o", "w</w>"}));
}

TEST(Ingest, SingleCharacterWords) {
  std::istringstream in("a b a");
  WordFrequencyTable table = ingest(in);
  EXPECT_EQ(table.entries().at(make_word("a")), 2u);
  EXPECT_EQ(table.entries().at(make_word("b")), 1u);
}

TEST(Ingest, DeterministicOnEqualBytes) {
  std::string text = "the quick brown fox\nthe lazy dog\n\nthe end";
  std::istringstream a(text), b(text);
  EXPECT_EQ(ingest(a), ingest(b));
}

TEST(Ingest, SplitAtLineBoundaryThenConcatEqualsWhole) {
  std::string part1 = "low low lower\nnewest widest";
  std::string part2 = "newest newest\nlow";
  std::istringstream whole(part1 + "\n" + part2);
  std::istringstream s1(part1), s2(part2);
  EXPECT_EQ(ingest(whole), concat({ingest(s1), ingest(s2)}));
}

TEST(IngestFile, MissingFileIsIoError) {
  EXPECT_THROW(ingest_file("/nonexistent/definitely-missing.txt"), IoError);
}

TEST(Concat, IdentityAndAdditivity) {
  WordFrequencyTable t;
  t.add(make_word("a"), 1);
  EXPECT_EQ(concat({t}), t);

  WordFrequencyTable u;
  u.add(make_word("a"), 2);
  WordFrequencyTable sum = concat({t, u});
  EXPECT_EQ(sum.entries().at(make_word("a")), 3u);
  EXPECT_EQ(sum.total_words(), 3u);
}

TEST(Concat, UnionsAlphabetsAcrossLanguages) {
  std::istringstream de("straße über"), en("street over");
  WordFrequencyTable joint = concat({ingest(de), ingest(en)});
  EXPECT_TRUE(joint.alphabet().count("\xc3\x9f"));
  EXPECT_TRUE(joint.alphabet().count("v"));
  EXPECT_EQ(joint.entries().size(), 4u);
}

TEST(Concat, RejectsMismatchedConfigsAndEmptyList) {
  PretokenConfig lower;
  lower.lowercase = true;
  WordFrequencyTable a, b{lower};
  a.add(make_word("x"), 1);
  EXPECT_THROW(concat({a, b}), ConfigMismatchError);
  EXPECT_THROW(concat({}), InvalidArgumentError);
}

TEST(WriteTableTsv, SortedAndStable) {
  WordFrequencyTable table;
  table.add(make_word("b"), 2);
  table.add(make_word("ab"), 1);
  std::ostringstream out;
  write_table_tsv(table, out);
  EXPECT_EQ(out.str(), "ab</w>\t1\nb</w>\t2\n");
}

TEST(Ingest, RandomTablesSatisfyInvariants) {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 50; ++trial) {
    WordFrequencyTable table = testutil::random_table(rng, 30, 12, 9);
    std::uint64_t total = 0;
    for (const auto& [word, count] : table.entries()) {
      EXPECT_GT(count, 0u);
      total += count;
      for (const auto& symbol : word) {
        EXPECT_TRUE(table.alphabet().count(symbol)) << symbol;
      }
    }
    EXPECT_EQ(table.total_words(), total);
  }
}

}  // namespace
}  // namespace bpetrim

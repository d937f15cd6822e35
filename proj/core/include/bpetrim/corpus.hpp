#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bpetrim {

// A symbol is one UTF-8 codepoint; the word-final symbol additionally carries
// the end-of-word marker fused onto it ("low" -> l, o, w</w>).
using Symbol = std::string;
using Word = std::vector<Symbol>;

struct WordHash {
  std::size_t operator()(const Word& word) const noexcept;
};

// Controls how raw text is turned into words before any model sees it.
// lowercase folds ASCII A-Z only; text is otherwise taken byte-for-byte
// (no Unicode normalization).
struct PretokenConfig {
  enum class WhitespaceRule { kUnicodeWhitespace };

  bool lowercase = false;
  std::string end_of_word_marker = "</w>";
  WhitespaceRule whitespace_rule = WhitespaceRule::kUnicodeWhitespace;

  bool operator==(const PretokenConfig&) const = default;
};

// Word-frequency view of a corpus: every distinct word with its occurrence
// count, plus the atomic alphabet collected from the words.
class WordFrequencyTable {
 public:
  using Entries = std::unordered_map<Word, std::uint64_t, WordHash>;

  WordFrequencyTable() = default;
  explicit WordFrequencyTable(PretokenConfig config) : config_(std::move(config)) {}

  const Entries& entries() const { return entries_; }
  const std::set<Symbol>& alphabet() const { return alphabet_; }
  const PretokenConfig& config() const { return config_; }
  // Number of word occurrences, i.e. the sum of all counts.
  std::uint64_t total_words() const { return total_words_; }
  bool empty() const { return entries_.empty(); }

  void add(const Word& word, std::uint64_t count);

  bool operator==(const WordFrequencyTable& other) const;

 private:
  Entries entries_;
  std::set<Symbol> alphabet_;
  std::uint64_t total_words_ = 0;
  PretokenConfig config_;
};

// Splits a raw word into symbols and fuses the end-of-word marker onto the
// last one. The word must be non-empty and must not contain the marker.
Word split_word(std::string_view raw, const PretokenConfig& config);

// Raw words of one line, split on Unicode whitespace, case-folded per config.
std::vector<std::string> split_line_words(std::string_view line,
                                          const PretokenConfig& config);

// Surface form of a word or token sequence: the symbols concatenated back.
std::string flatten(const Word& word);

// Whether `token` has the shape split_word gives atomic symbols: one
// codepoint run, optionally with the end-of-word marker fused on.
bool looks_atomic(std::string_view token, std::string_view end_of_word_marker);

// Builds a frequency table from a line stream. Deterministic: equal inputs
// give equal tables, and ingesting parts split at line boundaries then
// concatenating equals ingesting the whole. Empty input gives an empty table.
WordFrequencyTable ingest(std::istream& lines, const PretokenConfig& config = {});
WordFrequencyTable ingest_file(const std::filesystem::path& path,
                               const PretokenConfig& config = {});

// Merges tables by summing counts. All tables must share one config.
WordFrequencyTable concat(const std::vector<WordFrequencyTable>& tables);

// Debug dump, one "word<TAB>count" line per entry, sorted by surface form.
void write_table_tsv(const WordFrequencyTable& table, std::ostream& out);

}  // namespace bpetrim

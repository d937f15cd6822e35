#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bpetrim/corpus.hpp"
#include "bpetrim/trainer.hpp"

namespace bpetrim {

// Result of tokenizing one word. Symbols outside the model alphabet pass
// through as single tokens; their indices are listed in unknown_positions.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<std::uint32_t> unknown_positions;

  bool has_unknown() const { return !unknown_positions.empty(); }
  bool operator==(const TokenSequence&) const = default;
};

// Applies merges greedily: the applicable rule with the lowest rank wins,
// leftmost occurrence first. An empty word gives an empty sequence.
TokenSequence tokenize_word(const BpeModel& model, const Word& word);

// Id-level variant used on hot paths. Unknown symbols appear as
// BpeModel::kNoToken; their surface strings are appended to *unknown in order.
std::vector<std::uint32_t> tokenize_word_ids(
    const BpeModel& model, const Word& word,
    std::vector<std::string>* unknown = nullptr);

// Tokenizes every distinct word of the table once.
std::unordered_map<Word, TokenSequence, WordHash> tokenize_corpus(
    const BpeModel& model, const WordFrequencyTable& table);

// Token occurrence counts over a tokenized corpus, weighted by word counts.
using TokenCounts =
    std::unordered_map<std::string, std::uint64_t, TransparentStringHash,
                       std::equal_to<>>;

// c_v for every vocabulary token (zero-occurrence tokens included with 0).
// Unknown passthrough tokens are not vocabulary tokens and are not counted.
TokenCounts token_counts(const BpeModel& model, const WordFrequencyTable& table);

std::uint64_t total_count(const TokenCounts& counts);

// Surface rendering: "@@" suffix on every non-final token of a word, the
// end-of-word marker stripped from the final one.
std::string render_tokens(const TokenSequence& seq,
                          const std::string& end_of_word_marker);

// Line-level tokenization with a memoized per-word cache. The cache is safe
// under concurrent lookup and insertion; values are deterministic, so racing
// inserts agree. The wrapped model must outlive the segmenter.
class Segmenter {
 public:
  using WordFn = std::function<TokenSequence(const Word&)>;

  Segmenter(const BpeModel& model, PretokenConfig config);
  Segmenter(WordFn fn, PretokenConfig config);

  const PretokenConfig& config() const { return config_; }

  // Tokens of one raw (already whitespace-free) word, via the cache.
  TokenSequence word_tokens(const std::string& raw_word) const;

  // Token sequences of all words on the line, concatenated. End-of-word
  // markers stay in place so sequences compare faithfully.
  std::vector<std::string> line_tokens(std::string_view line) const;

  // The line in "@@"-continuation surface form.
  std::string render_line(std::string_view line) const;

 private:
  WordFn fn_;
  PretokenConfig config_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::string, TokenSequence, TransparentStringHash,
                             std::equal_to<>>
      cache_;
};

}  // namespace bpetrim

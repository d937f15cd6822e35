#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bpetrim/tokenizer.hpp"
#include "bpetrim/trainer.hpp"

namespace bpetrim {

struct TrimSpec {
  std::uint64_t threshold = 0;
  // When set, tokens that appear as neither left nor right component of any
  // merge rule are kept regardless of their count.
  bool preserve_terminals = false;

  bool operator==(const TrimSpec&) const = default;
};

// A base model with its trim set applied. Removed tokens stay reachable
// through the base merge list, but tokenization output replaces each of them
// by its decomposition: dec(v) = v if kept, else dec(left) ++ dec(right).
// Atomics are never removed, so decompositions always terminate and consist
// of kept tokens only.
class TrimmedModel {
 public:
  TrimmedModel() = default;

  const BpeModel& base() const { return base_; }
  const TrimSpec& spec() const { return spec_; }
  const std::set<std::string>& removed() const { return removed_; }
  const std::set<std::string>& effective_vocab() const { return effective_; }

  bool is_removed(std::string_view token) const {
    std::uint32_t id = base_.token_id(token);
    return id != BpeModel::kNoToken && removed_by_id_[id];
  }
  bool id_is_removed(std::uint32_t id) const { return removed_by_id_[id]; }
  // Decomposition ids of the removed token with the given rank.
  const std::vector<std::uint32_t>& decomposition_ids(std::uint32_t rank) const {
    return dec_by_rank_[rank];
  }

  bool operator==(const TrimmedModel& other) const {
    return base_ == other.base_ && spec_ == other.spec_ &&
           removed_ == other.removed_;
  }

 private:
  friend TrimmedModel make_trimmed(BpeModel base, std::set<std::string> removed,
                                   TrimSpec spec);

  BpeModel base_;
  TrimSpec spec_;
  std::set<std::string> removed_;
  std::set<std::string> effective_;
  std::vector<char> removed_by_id_;
  // Indexed by merge rank; empty for kept tokens.
  std::vector<std::vector<std::uint32_t>> dec_by_rank_;
};

// Tokens to remove: non-atomic tokens whose corpus count is at or below the
// threshold, minus preserved terminals. Every vocabulary token must be
// present in counts.
std::set<std::string> compute_trim_set(const BpeModel& model,
                                       const TokenCounts& counts,
                                       const TrimSpec& spec);

TrimmedModel trim(BpeModel base, const TokenCounts& counts, TrimSpec spec);

// Builds a trimmed model from an explicit removed set (the manifest reader's
// entry point). Every removed token must be a non-atomic base token.
TrimmedModel make_trimmed(BpeModel base, std::set<std::string> removed,
                          TrimSpec spec);

// dec(v): the token itself if kept (or foreign), else its decomposition.
std::vector<std::string> dec(const TrimmedModel& trimmed, std::string_view token);

// Base tokenization with removed tokens replaced by their decompositions.
TokenSequence tokenize_trimmed(const TrimmedModel& trimmed, const Word& word);

// Segmenter over the trimmed tokenization. The model must outlive it.
Segmenter make_segmenter(const TrimmedModel& trimmed, PretokenConfig config);

// For a shared (joint) model: the tokens present at least once in each
// language's tokenized corpus, one set per counts table.
std::vector<std::set<std::string>> per_language_effective_vocab(
    const BpeModel& model, const std::vector<TokenCounts>& counts_per_language);

}  // namespace bpetrim

#pragma once

// Brute-force reference implementations used as oracles. They share no
// algorithmic machinery with the library: training recounts every pair from
// scratch after each merge, tokenization rescans the whole rule list and
// applies one occurrence at a time, and trimmed expansion rewrites one
// removed token per step until a fixpoint. Slow on purpose.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bpetrim/corpus.hpp"

namespace bpetrim::reference {

using StringPair = std::pair<std::string, std::string>;

struct RefTraining {
  std::set<std::string> alphabet;
  std::vector<StringPair> pairs;
  std::vector<std::uint64_t> pair_counts;
};

// Greedy merge learning by full recount: each step rebuilds the entire
// pair-count table over the rewritten corpus, picks the highest count with
// ties broken toward the lexicographically smallest (left, right), and stops
// once the vocabulary reaches target_size or no pair occurs twice.
RefTraining train(const WordFrequencyTable& table, std::size_t target_size);

// Applies rules by repeated full rescans: find the lowest-rank rule with an
// occurrence, rewrite its leftmost occurrence only, start over.
std::vector<std::string> tokenize(const std::vector<StringPair>& rules,
                                  const Word& word);

// Indices of tokens that are not in vocab (the unknown passthroughs).
std::vector<std::uint32_t> unknown_positions(
    const std::vector<std::string>& tokens, const std::set<std::string>& vocab);

// Expands removed tokens one level per step (origin lookup by merged string)
// until no removed token is left.
std::vector<std::string> expand_removed(
    const std::vector<std::string>& tokens,
    const std::set<std::string>& removed,
    const std::map<std::string, StringPair>& origin_by_merged);

// c_v by retokenizing every word from scratch; vocab tokens that never occur
// are present with count zero.
std::map<std::string, std::uint64_t> token_counts(
    const std::vector<StringPair>& rules, const std::set<std::string>& vocab,
    const WordFrequencyTable& table);

}  // namespace bpetrim::reference

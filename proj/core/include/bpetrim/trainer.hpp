#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bpetrim/corpus.hpp"

namespace bpetrim {

struct TransparentStringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

// One learned merge. merged is always left + right.
struct MergeRule {
  std::uint32_t rank = 0;
  std::string left;
  std::string right;
  std::string merged;

  bool operator==(const MergeRule&) const = default;
};

// A trained model: the atomic alphabet plus the ordered merge list. The
// vocabulary is the alphabet united with every merged token; each merged
// token has exactly one origin pair, and following origins always bottoms
// out in the alphabet.
//
// Tokens also carry dense ids (atomics first, in byte order, then merged
// tokens in rank order) used by the tokenizer and trimmer hot paths.
class BpeModel {
 public:
  static constexpr std::uint32_t kNoToken = 0xffffffffu;

  BpeModel() = default;

  // Builds a model from an explicit alphabet and an ordered pair list,
  // validating that every rule references only tokens that already exist and
  // that no two rules produce the same merged token.
  static BpeModel from_merges(
      std::set<std::string> alphabet,
      const std::vector<std::pair<std::string, std::string>>& pairs);

  const std::set<std::string>& alphabet() const { return alphabet_; }
  const std::vector<MergeRule>& merges() const { return merges_; }
  std::size_t vocab_size() const { return id_to_token_.size(); }
  std::size_t atomic_count() const { return alphabet_.size(); }

  bool contains(std::string_view token) const {
    return token_to_id_.find(token) != token_to_id_.end();
  }
  bool is_atomic(std::string_view token) const {
    auto it = token_to_id_.find(token);
    return it != token_to_id_.end() && it->second < atomic_count();
  }

  // Origin rule of a merged token; nullptr for atomics and unknown strings.
  const MergeRule* origin(std::string_view token) const;

  std::uint32_t token_id(std::string_view token) const {
    auto it = token_to_id_.find(token);
    return it == token_to_id_.end() ? kNoToken : it->second;
  }
  const std::string& token(std::uint32_t id) const { return id_to_token_.at(id); }
  bool id_is_atomic(std::uint32_t id) const { return id < atomic_count(); }

  std::optional<std::uint32_t> pair_rank(std::uint32_t left, std::uint32_t right) const;
  // Component ids of the merged token with the given rank.
  std::pair<std::uint32_t, std::uint32_t> origin_ids(std::uint32_t rank) const {
    return origin_ids_.at(rank);
  }
  std::uint32_t merged_id(std::uint32_t rank) const {
    return static_cast<std::uint32_t>(atomic_count() + rank);
  }

  // Equality is structural: same alphabet, same merge list.
  bool operator==(const BpeModel& other) const {
    return alphabet_ == other.alphabet_ && merges_ == other.merges_;
  }

 private:
  static std::uint64_t pack(std::uint32_t l, std::uint32_t r) {
    return (static_cast<std::uint64_t>(l) << 32) | r;
  }

  std::set<std::string> alphabet_;
  std::vector<MergeRule> merges_;
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, std::uint32_t, TransparentStringHash, std::equal_to<>>
      token_to_id_;
  std::unordered_map<std::uint64_t, std::uint32_t> pair_to_rank_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> origin_ids_;
};

// Model plus the count each chosen pair had when its rule was created;
// merge_counts[r] belongs to merges()[r].
struct Training {
  BpeModel model;
  std::vector<std::uint64_t> merge_counts;
};

// Learns merges greedily: while the vocabulary is smaller than target_size,
// merge the most frequent adjacent pair. Count ties break toward the
// lexicographically smallest (left, right) pair by surface string. Stops
// early once no pair occurs at least twice. target_size counts tokens
// (alphabet plus merges), so the result can undershoot but never overshoot.
Training train(const WordFrequencyTable& table, std::size_t target_size);

BpeModel learn(const WordFrequencyTable& table, std::size_t target_size);

// learn over the concatenation of the given corpora (shared joint model).
BpeModel learn_joint(const std::vector<WordFrequencyTable>& tables,
                     std::size_t target_size);

}  // namespace bpetrim

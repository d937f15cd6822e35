#include "bpetrim/trimmer.hpp"

#include <algorithm>

#include "bpetrim/errors.hpp"

namespace bpetrim {
namespace {

void require_counts_cover_vocab(const BpeModel& model, const TokenCounts& counts) {
  for (std::uint32_t id = 0; id < model.vocab_size(); ++id) {
    if (counts.find(model.token(id)) == counts.end()) {
      throw ConsistencyError("counts are missing vocabulary token: " +
                             model.token(id));
    }
  }
}

// Ids of tokens used as a component by at least one rule.
std::vector<char> component_mask(const BpeModel& model) {
  std::vector<char> used(model.vocab_size(), 0);
  for (std::uint32_t rank = 0; rank < model.merges().size(); ++rank) {
    auto [left, right] = model.origin_ids(rank);
    used[left] = 1;
    used[right] = 1;
  }
  return used;
}

}  // namespace

std::set<std::string> compute_trim_set(const BpeModel& model,
                                       const TokenCounts& counts,
                                       const TrimSpec& spec) {
  require_counts_cover_vocab(model, counts);
  std::vector<char> used;
  if (spec.preserve_terminals) used = component_mask(model);
  std::set<std::string> removed;
  for (const MergeRule& rule : model.merges()) {
    if (counts.find(rule.merged)->second > spec.threshold) continue;
    if (spec.preserve_terminals && !used[model.token_id(rule.merged)]) continue;
    removed.insert(rule.merged);
  }
  return removed;
}

TrimmedModel make_trimmed(BpeModel base, std::set<std::string> removed,
                          TrimSpec spec) {
  TrimmedModel out;
  out.spec_ = spec;
  out.removed_by_id_.assign(base.vocab_size(), 0);
  for (const std::string& token : removed) {
    std::uint32_t id = base.token_id(token);
    if (id == BpeModel::kNoToken) {
      throw ConsistencyError("removed token is not in the base vocabulary: " +
                             token);
    }
    if (base.id_is_atomic(id)) {
      throw ConsistencyError("atomic token cannot be removed: " + token);
    }
    out.removed_by_id_[id] = 1;
  }
  // Decompositions in rank order: components always have lower ranks, so
  // their expansions are ready when needed.
  out.dec_by_rank_.resize(base.merges().size());
  for (std::uint32_t rank = 0; rank < base.merges().size(); ++rank) {
    if (!out.removed_by_id_[base.merged_id(rank)]) continue;
    auto [left, right] = base.origin_ids(rank);
    std::vector<std::uint32_t>& pieces = out.dec_by_rank_[rank];
    for (std::uint32_t side : {left, right}) {
      if (!base.id_is_atomic(side) && out.removed_by_id_[side]) {
        const auto& sub = out.dec_by_rank_[side - base.atomic_count()];
        pieces.insert(pieces.end(), sub.begin(), sub.end());
      } else {
        pieces.push_back(side);
      }
    }
  }
  for (std::uint32_t id = 0; id < base.vocab_size(); ++id) {
    if (!out.removed_by_id_[id]) out.effective_.insert(base.token(id));
  }
  out.removed_ = std::move(removed);
  out.base_ = std::move(base);
  return out;
}

TrimmedModel trim(BpeModel base, const TokenCounts& counts, TrimSpec spec) {
  std::set<std::string> removed = compute_trim_set(base, counts, spec);
  return make_trimmed(std::move(base), std::move(removed), spec);
}

std::vector<std::string> dec(const TrimmedModel& trimmed, std::string_view token) {
  const BpeModel& base = trimmed.base();
  std::uint32_t id = base.token_id(token);
  if (id == BpeModel::kNoToken || !trimmed.id_is_removed(id)) {
    return {std::string(token)};
  }
  const auto& ids =
      trimmed.decomposition_ids(id - static_cast<std::uint32_t>(base.atomic_count()));
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (std::uint32_t piece : ids) out.push_back(base.token(piece));
  return out;
}

TokenSequence tokenize_trimmed(const TrimmedModel& trimmed, const Word& word) {
  const BpeModel& base = trimmed.base();
  std::vector<std::string> unknown;
  std::vector<std::uint32_t> ids = tokenize_word_ids(base, word, &unknown);
  TokenSequence seq;
  seq.tokens.reserve(ids.size());
  std::size_t next_unknown = 0;
  for (std::uint32_t id : ids) {
    if (id == BpeModel::kNoToken) {
      seq.unknown_positions.push_back(static_cast<std::uint32_t>(seq.tokens.size()));
      seq.tokens.push_back(unknown[next_unknown++]);
    } else if (!base.id_is_atomic(id) && trimmed.id_is_removed(id)) {
      for (std::uint32_t piece : trimmed.decomposition_ids(
               id - static_cast<std::uint32_t>(base.atomic_count()))) {
        seq.tokens.push_back(base.token(piece));
      }
    } else {
      seq.tokens.push_back(base.token(id));
    }
  }
  return seq;
}

Segmenter make_segmenter(const TrimmedModel& trimmed, PretokenConfig config) {
  return Segmenter(
      [&trimmed](const Word& word) { return tokenize_trimmed(trimmed, word); },
      std::move(config));
}

std::vector<std::set<std::string>> per_language_effective_vocab(
    const BpeModel& model, const std::vector<TokenCounts>& counts_per_language) {
  if (counts_per_language.empty()) {
    throw InvalidArgumentError("need at least one language counts table");
  }
  std::vector<std::set<std::string>> out;
  out.reserve(counts_per_language.size());
  for (const TokenCounts& counts : counts_per_language) {
    require_counts_cover_vocab(model, counts);
    std::set<std::string> present;
    for (std::uint32_t id = 0; id < model.vocab_size(); ++id) {
      const std::string& token = model.token(id);
      if (counts.find(token)->second >= 1) present.insert(token);
    }
    out.push_back(std::move(present));
  }
  return out;
}

}  // namespace bpetrim

#include "bpetrim/tokenizer.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "bpetrim/errors.hpp"

namespace bpetrim {

std::vector<std::uint32_t> tokenize_word_ids(const BpeModel& model,
                                             const Word& word,
                                             std::vector<std::string>* unknown) {
  std::vector<std::uint32_t> ids;
  ids.reserve(word.size());
  for (const Symbol& s : word) {
    std::uint32_t id = model.token_id(s);
    if (id == BpeModel::kNoToken && unknown) unknown->push_back(s);
    ids.push_back(id);
  }
  while (ids.size() > 1) {
    std::uint32_t best_rank = BpeModel::kNoToken;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      if (ids[i] == BpeModel::kNoToken || ids[i + 1] == BpeModel::kNoToken) {
        continue;
      }
      auto rank = model.pair_rank(ids[i], ids[i + 1]);
      if (rank && *rank < best_rank) best_rank = *rank;
    }
    if (best_rank == BpeModel::kNoToken) break;
    auto [left, right] = model.origin_ids(best_rank);
    const std::uint32_t merged = model.merged_id(best_rank);
    std::vector<std::uint32_t> out;
    out.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size();) {
      if (i + 1 < ids.size() && ids[i] == left && ids[i + 1] == right) {
        out.push_back(merged);
        i += 2;
      } else {
        out.push_back(ids[i]);
        ++i;
      }
    }
    ids = std::move(out);
  }
  return ids;
}

TokenSequence tokenize_word(const BpeModel& model, const Word& word) {
  std::vector<std::string> unknown;
  std::vector<std::uint32_t> ids = tokenize_word_ids(model, word, &unknown);
  TokenSequence seq;
  seq.tokens.reserve(ids.size());
  std::size_t next_unknown = 0;
  for (std::uint32_t id : ids) {
    if (id == BpeModel::kNoToken) {
      seq.unknown_positions.push_back(static_cast<std::uint32_t>(seq.tokens.size()));
      seq.tokens.push_back(unknown[next_unknown++]);
    } else {
      seq.tokens.push_back(model.token(id));
    }
  }
  return seq;
}

std::unordered_map<Word, TokenSequence, WordHash> tokenize_corpus(
    const BpeModel& model, const WordFrequencyTable& table) {
  std::unordered_map<Word, TokenSequence, WordHash> out;
  out.reserve(table.entries().size());
  for (const auto& [word, count] : table.entries()) {
    out.emplace(word, tokenize_word(model, word));
  }
  return out;
}

TokenCounts token_counts(const BpeModel& model, const WordFrequencyTable& table) {
  std::vector<std::uint64_t> by_id(model.vocab_size(), 0);
  for (const auto& [word, count] : table.entries()) {
    for (std::uint32_t id : tokenize_word_ids(model, word)) {
      if (id != BpeModel::kNoToken) by_id[id] += count;
    }
  }
  TokenCounts counts;
  counts.reserve(by_id.size());
  for (std::uint32_t id = 0; id < by_id.size(); ++id) {
    counts.emplace(model.token(id), by_id[id]);
  }
  return counts;
}

std::uint64_t total_count(const TokenCounts& counts) {
  return std::accumulate(
      counts.begin(), counts.end(), std::uint64_t{0},
      [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

std::string render_tokens(const TokenSequence& seq,
                          const std::string& end_of_word_marker) {
  std::string out;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (i > 0) out += ' ';
    std::string_view token = seq.tokens[i];
    if (i + 1 == seq.tokens.size()) {
      if (token.ends_with(end_of_word_marker)) {
        token.remove_suffix(end_of_word_marker.size());
      }
      out += token;
    } else {
      out += token;
      out += "@@";
    }
  }
  return out;
}

Segmenter::Segmenter(const BpeModel& model, PretokenConfig config)
    : fn_([&model](const Word& word) { return tokenize_word(model, word); }),
      config_(std::move(config)) {}

Segmenter::Segmenter(WordFn fn, PretokenConfig config)
    : fn_(std::move(fn)), config_(std::move(config)) {}

TokenSequence Segmenter::word_tokens(const std::string& raw_word) const {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(raw_word);
    if (it != cache_.end()) return it->second;
  }
  TokenSequence seq = fn_(split_word(raw_word, config_));
  std::unique_lock lock(mutex_);
  return cache_.emplace(raw_word, std::move(seq)).first->second;
}

std::vector<std::string> Segmenter::line_tokens(std::string_view line) const {
  std::vector<std::string> out;
  for (const std::string& raw : split_line_words(line, config_)) {
    TokenSequence seq = word_tokens(raw);
    out.insert(out.end(), seq.tokens.begin(), seq.tokens.end());
  }
  return out;
}

std::string Segmenter::render_line(std::string_view line) const {
  std::string out;
  bool first = true;
  for (const std::string& raw : split_line_words(line, config_)) {
    if (!first) out += ' ';
    first = false;
    out += render_tokens(word_tokens(raw), config_.end_of_word_marker);
  }
  return out;
}

}  // namespace bpetrim

#include "bpetrim/trainer.hpp"

#include <queue>
#include <unordered_set>

#include "bpetrim/errors.hpp"

namespace bpetrim {

BpeModel BpeModel::from_merges(
    std::set<std::string> alphabet,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  BpeModel model;
  model.alphabet_ = std::move(alphabet);
  model.id_to_token_.reserve(model.alphabet_.size() + pairs.size());
  for (const std::string& symbol : model.alphabet_) {
    if (symbol.empty()) {
      throw ConsistencyError("alphabet contains an empty symbol");
    }
    std::uint32_t id = static_cast<std::uint32_t>(model.id_to_token_.size());
    model.id_to_token_.push_back(symbol);
    model.token_to_id_.emplace(symbol, id);
  }
  model.merges_.reserve(pairs.size());
  model.origin_ids_.reserve(pairs.size());
  for (std::size_t rank = 0; rank < pairs.size(); ++rank) {
    const auto& [left, right] = pairs[rank];
    std::uint32_t left_id = model.token_id(left);
    std::uint32_t right_id = model.token_id(right);
    if (left_id == kNoToken || right_id == kNoToken) {
      const std::string& missing = left_id == kNoToken ? left : right;
      throw ConsistencyError("merge rule " + std::to_string(rank) +
                             " references undefined token: " + missing);
    }
    std::string merged = left + right;
    std::uint32_t id = static_cast<std::uint32_t>(model.id_to_token_.size());
    if (!model.token_to_id_.emplace(merged, id).second) {
      throw ConsistencyError("merge rule " + std::to_string(rank) +
                             " produces duplicate token: " + merged);
    }
    model.id_to_token_.push_back(merged);
    model.pair_to_rank_.emplace(pack(left_id, right_id),
                                static_cast<std::uint32_t>(rank));
    model.origin_ids_.emplace_back(left_id, right_id);
    model.merges_.push_back(MergeRule{static_cast<std::uint32_t>(rank), left,
                                      right, std::move(merged)});
  }
  return model;
}

const MergeRule* BpeModel::origin(std::string_view token) const {
  auto it = token_to_id_.find(token);
  if (it == token_to_id_.end() || it->second < atomic_count()) return nullptr;
  return &merges_[it->second - atomic_count()];
}

std::optional<std::uint32_t> BpeModel::pair_rank(std::uint32_t left,
                                                 std::uint32_t right) const {
  auto it = pair_to_rank_.find(pack(left, right));
  if (it == pair_to_rank_.end()) return std::nullopt;
  return it->second;
}

namespace {

constexpr std::uint64_t kMinPairCount = 2;

std::uint64_t pack(std::uint32_t l, std::uint32_t r) {
  return (static_cast<std::uint64_t>(l) << 32) | r;
}

// Candidate snapshot in the lazy max-heap; entries whose count no longer
// matches the live table are discarded on pop.
struct HeapEntry {
  std::uint64_t count;
  std::uint32_t left;
  std::uint32_t right;
};

class Learner {
 public:
  Learner(const WordFrequencyTable& table, std::size_t target_size)
      : target_size_(target_size), heap_(Worse{this}) {
    for (const Symbol& s : table.alphabet()) intern(s);
    words_.reserve(table.entries().size());
    word_counts_.reserve(table.entries().size());
    for (const auto& [word, count] : table.entries()) {
      std::vector<std::uint32_t> ids;
      ids.reserve(word.size());
      for (const Symbol& s : word) ids.push_back(token_ids_.at(s));
      words_.push_back(std::move(ids));
      word_counts_.push_back(count);
    }
  }

  Training run(const WordFrequencyTable& table) {
    count_initial_pairs();
    for (const auto& [key, count] : pair_counts_) {
      if (count >= kMinPairCount) {
        heap_.push(HeapEntry{count, static_cast<std::uint32_t>(key >> 32),
                             static_cast<std::uint32_t>(key & 0xffffffffu)});
      }
    }
    while (tokens_.size() < target_size_) {
      std::optional<HeapEntry> best = pop_best();
      if (!best) break;
      apply_merge(*best);
    }
    BpeModel model = BpeModel::from_merges(table.alphabet(), rules_);
    return Training{std::move(model), std::move(merge_counts_)};
  }

 private:
  // Max-heap order: highest count first, ties toward the lexicographically
  // smallest (left, right) surface pair.
  struct Worse {
    const Learner* self;
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
      if (a.count != b.count) return a.count < b.count;
      const std::string& al = self->tokens_[a.left];
      const std::string& bl = self->tokens_[b.left];
      if (al != bl) return al > bl;
      return self->tokens_[a.right] > self->tokens_[b.right];
    }
  };

  std::uint32_t intern(const std::string& token) {
    auto [it, inserted] =
        token_ids_.emplace(token, static_cast<std::uint32_t>(tokens_.size()));
    if (inserted) tokens_.push_back(token);
    return it->second;
  }

  void count_initial_pairs() {
    for (std::uint32_t wi = 0; wi < words_.size(); ++wi) {
      const auto& w = words_[wi];
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        add_pair(pack(w[i], w[i + 1]), word_counts_[wi], wi);
      }
    }
  }

  void add_pair(std::uint64_t key, std::uint64_t by, std::uint32_t wi) {
    pair_counts_[key] += by;
    where_[key].insert(wi);
    touched_.insert(key);
  }

  void remove_pair(std::uint64_t key, std::uint64_t by) {
    auto it = pair_counts_.find(key);
    it->second -= by;
    if (it->second == 0) pair_counts_.erase(it);
    touched_.insert(key);
  }

  std::optional<HeapEntry> pop_best() {
    while (!heap_.empty()) {
      HeapEntry e = heap_.top();
      auto it = pair_counts_.find(pack(e.left, e.right));
      if (it == pair_counts_.end() || it->second != e.count) {
        heap_.pop();  // stale snapshot
        continue;
      }
      if (e.count < kMinPairCount) return std::nullopt;
      return e;
    }
    return std::nullopt;
  }

  void apply_merge(const HeapEntry& best) {
    const std::uint64_t key = pack(best.left, best.right);
    std::string merged = tokens_[best.left] + tokens_[best.right];
    if (token_ids_.find(merged) != token_ids_.end()) {
      throw ConsistencyError("training produced duplicate token: " + merged);
    }
    const std::uint32_t merged_id = intern(merged);
    rules_.emplace_back(tokens_[best.left], tokens_[best.right]);
    merge_counts_.push_back(best.count);

    auto at = where_.find(key);
    std::unordered_set<std::uint32_t> affected;
    if (at != where_.end()) {
      affected = std::move(at->second);
      where_.erase(at);
    }
    touched_.clear();
    for (std::uint32_t wi : affected) {
      rewrite_word(wi, best.left, best.right, merged_id);
    }
    for (std::uint64_t k : touched_) {
      auto it = pair_counts_.find(k);
      if (it != pair_counts_.end() && it->second >= kMinPairCount) {
        heap_.push(HeapEntry{it->second, static_cast<std::uint32_t>(k >> 32),
                             static_cast<std::uint32_t>(k & 0xffffffffu)});
      }
    }
  }

  // Replaces all left+right occurrences (leftmost first, non-overlapping) and
  // rebuilds the word's contribution to the pair table. where_ entries are
  // supersets: words that no longer contain a pair are skipped here.
  void rewrite_word(std::uint32_t wi, std::uint32_t left, std::uint32_t right,
                    std::uint32_t merged_id) {
    auto& w = words_[wi];
    bool hit = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == left && w[i + 1] == right) {
        hit = true;
        break;
      }
    }
    if (!hit) return;
    const std::uint64_t count = word_counts_[wi];
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      remove_pair(pack(w[i], w[i + 1]), count);
    }
    std::vector<std::uint32_t> out;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size();) {
      if (i + 1 < w.size() && w[i] == left && w[i + 1] == right) {
        out.push_back(merged_id);
        i += 2;
      } else {
        out.push_back(w[i]);
        ++i;
      }
    }
    w = std::move(out);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      add_pair(pack(w[i], w[i + 1]), count, wi);
    }
  }

  std::size_t target_size_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t, TransparentStringHash, std::equal_to<>>
      token_ids_;
  std::vector<std::vector<std::uint32_t>> words_;
  std::vector<std::uint64_t> word_counts_;
  std::unordered_map<std::uint64_t, std::uint64_t> pair_counts_;
  std::unordered_map<std::uint64_t, std::unordered_set<std::uint32_t>> where_;
  std::unordered_set<std::uint64_t> touched_;
  std::vector<std::pair<std::string, std::string>> rules_;
  std::vector<std::uint64_t> merge_counts_;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, Worse> heap_;
};

}  // namespace

Training train(const WordFrequencyTable& table, std::size_t target_size) {
  if (target_size < table.alphabet().size()) {
    throw InvalidSizeError("target size " + std::to_string(target_size) +
                           " is smaller than the alphabet (" +
                           std::to_string(table.alphabet().size()) + ")");
  }
  Learner learner(table, target_size);
  return learner.run(table);
}

BpeModel learn(const WordFrequencyTable& table, std::size_t target_size) {
  return train(table, target_size).model;
}

BpeModel learn_joint(const std::vector<WordFrequencyTable>& tables,
                     std::size_t target_size) {
  return learn(concat(tables), target_size);
}

}  // namespace bpetrim

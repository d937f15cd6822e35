#include "bpetrim/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>

#include "bpetrim/errors.hpp"
#include "bpetrim/trainer.hpp"

namespace bpetrim {

void write_report(const TrimReport& report, std::ostream& out) {
  std::ostream::fmtflags flags = out.flags();
  std::streamsize precision = out.precision();
  out << std::fixed << std::setprecision(6);
  out << "threshold-src: " << report.thresholds.first << '\n'
      << "threshold-tgt: " << report.thresholds.second << '\n'
      << "preserve-terminals: " << (report.preserve_terminals ? "true" : "false")
      << '\n'
      << "effective-vocab-src: " << report.effective_vocab_sizes.first << '\n'
      << "effective-vocab-tgt: " << report.effective_vocab_sizes.second << '\n'
      << "removed-src: " << report.removed_counts.first << '\n'
      << "removed-tgt: " << report.removed_counts.second << '\n'
      << "avg-seq-len-src: " << report.avg_seq_len.first << '\n'
      << "avg-seq-len-tgt: " << report.avg_seq_len.second << '\n'
      << "rel-seq-len-delta-src: " << report.rel_seq_len_delta.first << '\n'
      << "rel-seq-len-delta-tgt: " << report.rel_seq_len_delta.second << '\n'
      << "freq-percentile-src: " << report.freq_percentile_src << '\n'
      << "freq-percentile-tgt: " << report.freq_percentile_tgt << '\n'
      << "freq-percentile-overall: " << report.freq_percentile_overall << '\n'
      << "param-fraction: " << report.param_fraction_percent << '\n';
  out.flags(flags);
  out.precision(precision);
}

std::pair<std::size_t, std::size_t> effective_sizes(const TrimmedModel& source,
                                                    const TrimmedModel& target) {
  return {source.effective_vocab().size(), target.effective_vocab().size()};
}

SeqLenStats avg_sequence_length(const Segmenter& segmenter, std::istream& corpus) {
  if (corpus.fail()) {
    throw IoError("unreadable corpus stream");
  }
  SeqLenStats stats;
  std::string line;
  while (std::getline(corpus, line)) {
    stats.tokens += segmenter.line_tokens(line).size();
    ++stats.lines;
  }
  if (corpus.bad()) {
    throw IoError("read failure while measuring sequence length");
  }
  if (stats.lines == 0) {
    throw EmptyCorpusError("cannot measure sequence length of an empty corpus");
  }
  return stats;
}

double relative_delta_percent(double base, double trimmed) {
  if (base == 0.0) {
    throw InvalidArgumentError("relative delta needs a nonzero base value");
  }
  return 100.0 * (trimmed - base) / base;
}

double frequency_percentile(const TokenCounts& counts, std::uint64_t count_floor) {
  if (counts.empty()) {
    throw InvalidArgumentError("frequency percentile of an empty counts table");
  }
  std::size_t above = 0;
  for (const auto& [token, count] : counts) {
    if (count > count_floor) ++above;
  }
  return static_cast<double>(above) / static_cast<double>(counts.size());
}

HeuristicResult heuristic_vocab_search(const WordFrequencyTable& table,
                                       const std::vector<std::size_t>& candidate_sizes,
                                       double percentile,
                                       std::uint64_t count_floor,
                                       bool full_retrain) {
  if (candidate_sizes.empty()) {
    throw InvalidArgumentError("need at least one candidate vocabulary size");
  }
  if (!std::is_sorted(candidate_sizes.begin(), candidate_sizes.end()) ||
      std::adjacent_find(candidate_sizes.begin(), candidate_sizes.end()) !=
          candidate_sizes.end()) {
    throw InvalidArgumentError("candidate sizes must be strictly ascending");
  }
  if (percentile <= 0.0 || percentile >= 1.0) {
    throw InvalidArgumentError("percentile must lie strictly between 0 and 1");
  }

  // The merge list learned for a smaller target is a prefix of the one
  // learned for a larger target, so one training run at the largest
  // candidate covers all of them unless a full retrain is requested.
  std::vector<std::pair<std::string, std::string>> full_rules;
  if (!full_retrain) {
    const BpeModel largest = learn(table, candidate_sizes.back());
    full_rules.reserve(largest.merges().size());
    for (const MergeRule& rule : largest.merges()) {
      full_rules.emplace_back(rule.left, rule.right);
    }
  }

  HeuristicResult result;
  result.none_qualified = true;
  result.chosen = candidate_sizes.front();
  for (std::size_t requested : candidate_sizes) {
    BpeModel model;
    if (full_retrain) {
      model = learn(table, requested);
    } else {
      if (requested < table.alphabet().size()) {
        throw InvalidSizeError("target size " + std::to_string(requested) +
                               " is smaller than the alphabet (" +
                               std::to_string(table.alphabet().size()) + ")");
      }
      std::size_t prefix =
          std::min(requested - table.alphabet().size(), full_rules.size());
      model = BpeModel::from_merges(
          table.alphabet(),
          {full_rules.begin(), full_rules.begin() + static_cast<std::ptrdiff_t>(prefix)});
    }
    HeuristicCandidate candidate;
    candidate.requested = requested;
    candidate.actual_vocab = model.vocab_size();
    candidate.percentile =
        frequency_percentile(token_counts(model, table), count_floor);
    candidate.qualifies = candidate.percentile > percentile;
    if (candidate.qualifies) {
      result.chosen = requested;
      result.none_qualified = false;
    }
    result.candidates.push_back(candidate);
  }
  return result;
}

double param_fraction(std::size_t effective_src, std::size_t effective_tgt,
                      std::size_t embed_dim, std::uint64_t core_params) {
  if (effective_src == 0 || effective_tgt == 0 || embed_dim == 0 ||
      core_params == 0) {
    throw InvalidArgumentError("param fraction needs positive inputs");
  }
  const double embed = static_cast<double>(effective_src + effective_tgt) *
                       static_cast<double>(embed_dim);
  return 100.0 * embed / (static_cast<double>(core_params) + embed);
}

RareSentenceSplit rare_sentence_split(const std::vector<SentencePair>& pairs,
                                      const Segmenter& base_source,
                                      const Segmenter& base_target,
                                      const Segmenter& trimmed_source,
                                      const Segmenter& trimmed_target) {
  RareSentenceSplit split;
  for (const SentencePair& pair : pairs) {
    const bool source_differs =
        base_source.line_tokens(pair.source) != trimmed_source.line_tokens(pair.source);
    const bool target_differs =
        base_target.line_tokens(pair.target) != trimmed_target.line_tokens(pair.target);
    (source_differs ? split.source_mismatch : split.source_match).push_back(pair);
    (target_differs ? split.target_mismatch : split.target_match).push_back(pair);
    if (source_differs && target_differs) split.both_mismatch.push_back(pair);
  }
  return split;
}

}  // namespace bpetrim

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bpetrim/corpus.hpp"
#include "bpetrim/tokenizer.hpp"
#include "bpetrim/trimmer.hpp"

namespace bpetrim {

// Token count over a line stream; average() is tokens per line.
struct SeqLenStats {
  std::uint64_t tokens = 0;
  std::uint64_t lines = 0;

  double average() const {
    return lines == 0 ? 0.0 : static_cast<double>(tokens) / static_cast<double>(lines);
  }
};

// Measurement summary for one (source, target) trim. avg_seq_len holds the
// base models' averages; rel_seq_len_delta is the trimmed models' change
// against them, in percent.
struct TrimReport {
  std::pair<std::uint64_t, std::uint64_t> thresholds{0, 0};
  bool preserve_terminals = false;
  std::pair<std::size_t, std::size_t> effective_vocab_sizes{0, 0};
  std::pair<std::size_t, std::size_t> removed_counts{0, 0};
  std::pair<double, double> avg_seq_len{0.0, 0.0};
  std::pair<double, double> rel_seq_len_delta{0.0, 0.0};
  double freq_percentile_src = 0.0;
  double freq_percentile_tgt = 0.0;
  double freq_percentile_overall = 0.0;
  double param_fraction_percent = 0.0;
};

// Key-value serialization, fixed field order, fixed six-decimal floats.
void write_report(const TrimReport& report, std::ostream& out);

std::pair<std::size_t, std::size_t> effective_sizes(const TrimmedModel& source,
                                                    const TrimmedModel& target);

// Average tokens per line over a corpus stream. Zero lines is an error.
SeqLenStats avg_sequence_length(const Segmenter& segmenter, std::istream& corpus);

// 100 * (trimmed - base) / base.
double relative_delta_percent(double base, double trimmed);

// Fraction of vocabulary tokens (atomics included) whose count exceeds
// count_floor.
double frequency_percentile(const TokenCounts& counts, std::uint64_t count_floor);

struct HeuristicCandidate {
  std::size_t requested = 0;
  std::size_t actual_vocab = 0;  // can undershoot when training stops early
  double percentile = 0.0;
  bool qualifies = false;
};

struct HeuristicResult {
  std::size_t chosen = 0;
  bool none_qualified = false;
  std::vector<HeuristicCandidate> candidates;
};

// Largest candidate vocabulary size whose trained model keeps more than
// `percentile` of its tokens above count_floor on the training corpus; the
// smallest candidate (flagged) when none qualifies. Candidates must be
// strictly ascending. By default one model is trained at the largest size
// and smaller candidates reuse merge-list prefixes; full_retrain trains each
// candidate from scratch for verification.
HeuristicResult heuristic_vocab_search(const WordFrequencyTable& table,
                                       const std::vector<std::size_t>& candidate_sizes,
                                       double percentile,
                                       std::uint64_t count_floor,
                                       bool full_retrain = false);

// Share of embedding parameters in a model with the given embedding
// dimension and fixed non-embedding parameter count, in percent.
double param_fraction(std::size_t effective_src, std::size_t effective_tgt,
                      std::size_t embed_dim, std::uint64_t core_params);

struct SentencePair {
  std::string source;
  std::string target;

  bool operator==(const SentencePair&) const = default;
};

// Test-set splits by tokenization mismatch. A pair is source-mismatch iff
// the base and trimmed tokenizations of its source line differ; likewise for
// target. both_mismatch is the intersection of the two mismatch sets.
struct RareSentenceSplit {
  std::vector<SentencePair> source_mismatch;
  std::vector<SentencePair> source_match;
  std::vector<SentencePair> target_mismatch;
  std::vector<SentencePair> target_match;
  std::vector<SentencePair> both_mismatch;
};

RareSentenceSplit rare_sentence_split(const std::vector<SentencePair>& pairs,
                                      const Segmenter& base_source,
                                      const Segmenter& base_target,
                                      const Segmenter& trimmed_source,
                                      const Segmenter& trimmed_target);

}  // namespace bpetrim

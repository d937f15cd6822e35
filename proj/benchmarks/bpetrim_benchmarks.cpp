// Microbenchmarks over a synthetic Zipf-shaped corpus. Fixed seeds keep runs
// comparable across builds; nothing here touches the filesystem.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bpetrim/corpus.hpp"
#include "bpetrim/tokenizer.hpp"
#include "bpetrim/trainer.hpp"
#include "bpetrim/trimmer.hpp"

namespace {

using namespace bpetrim;

// Pseudo-words assembled from syllables so merges have real structure.
std::vector<std::string> synthetic_words(std::size_t distinct, unsigned seed) {
  static const char* kSyllables[] = {"to", "ke", "ni",  "za", "ti",
                                     "on", "er", "est", "lo", "wi"};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kSyllables) - 1);
  std::uniform_int_distribution<std::size_t> syllables(1, 4);
  std::vector<std::string> words;
  words.reserve(distinct);
  for (std::size_t i = 0; i < distinct; ++i) {
    std::string word;
    std::size_t n = syllables(rng);
    for (std::size_t s = 0; s < n; ++s) word += kSyllables[pick(rng)];
    words.push_back(std::move(word));
  }
  return words;
}

// Rank r occurs roughly distinct/(r+1) times: a Zipf-like frequency profile.
std::string synthetic_text(const std::vector<std::string>& words) {
  std::ostringstream out;
  std::size_t column = 0;
  for (std::size_t rank = 0; rank < words.size(); ++rank) {
    std::uint64_t count = words.size() / (rank + 1) + 1;
    for (std::uint64_t i = 0; i < count; ++i) {
      out << words[rank] << (++column % 12 == 0 ? '\n' : ' ');
    }
  }
  out << '\n';
  return out.str();
}

const WordFrequencyTable& corpus_table() {
  static const WordFrequencyTable table = [] {
    std::istringstream text(synthetic_text(synthetic_words(2000, 4242)));
    return ingest(text);
  }();
  return table;
}

const BpeModel& trained_model() {
  static const BpeModel model =
      learn(corpus_table(), corpus_table().alphabet().size() + 1024);
  return model;
}

const TokenCounts& trained_counts() {
  static const TokenCounts counts = token_counts(trained_model(), corpus_table());
  return counts;
}

void BM_Train(benchmark::State& state) {
  const WordFrequencyTable& table = corpus_table();
  std::size_t target = table.alphabet().size() + state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(learn(table, target));
  }
}
BENCHMARK(BM_Train)->Arg(256)->Arg(1024)->Arg(2048);

void BM_TokenizeWord(benchmark::State& state) {
  const BpeModel& model = trained_model();
  Word word = split_word("tokenizationestonizer", PretokenConfig{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(tokenize_word(model, word));
  }
}
BENCHMARK(BM_TokenizeWord);

void BM_SegmentLine(benchmark::State& state) {
  Segmenter segmenter(trained_model(), PretokenConfig{});
  std::vector<std::string> lines;
  std::istringstream text(synthetic_text(synthetic_words(500, 99)));
  for (std::string line; std::getline(text, line);) lines.push_back(line);
  std::size_t next = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(segmenter.line_tokens(lines[next]));
    next = (next + 1) % lines.size();
  }
}
BENCHMARK(BM_SegmentLine);

void BM_Trim(benchmark::State& state) {
  const BpeModel& model = trained_model();
  const TokenCounts& counts = trained_counts();
  TrimSpec spec{static_cast<std::uint64_t>(state.range(0)), false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(trim(model, counts, spec));
  }
}
BENCHMARK(BM_Trim)->Arg(10)->Arg(100);

void BM_TokenCounts(benchmark::State& state) {
  const BpeModel& model = trained_model();
  const WordFrequencyTable& table = corpus_table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(token_counts(model, table));
  }
}
BENCHMARK(BM_TokenCounts);

}  // namespace

BENCHMARK_MAIN();

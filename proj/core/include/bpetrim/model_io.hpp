#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>

#include "bpetrim/tokenizer.hpp"
#include "bpetrim/trainer.hpp"
#include "bpetrim/trimmer.hpp"

namespace bpetrim {

// Merges-file layout: this header line, then one "left right" rule per line
// in rank order. All files are UTF-8 with \n line ends; writers are
// byte-deterministic.
inline constexpr std::string_view kMergesHeader = "#version: 0.2";

void write_merges(const BpeModel& model, std::ostream& out);

// Parses a merges file. The alphabet is reconstructed from rule components:
// a component no earlier rule produced must look atomic (one codepoint,
// optionally marker-fused) or the rule references an undefined token.
// Alphabet symbols that never participate in a merge are not representable
// in the file; pass them through extra_alphabet (atomic-shaped entries only)
// to reconstruct the full original model.
BpeModel read_merges(std::istream& in,
                     const std::set<std::string>& extra_alphabet = {},
                     const std::string& end_of_word_marker = "</w>");

// Vocabulary-count layout: one "token count" line, counts descending, ties
// by token byte order. Zero counts are kept, so the file covers the whole
// vocabulary and round-trips exactly.
void write_vocab(const TokenCounts& counts, std::ostream& out);
TokenCounts read_vocab(std::istream& in);

// Trim-manifest layout: a fixed header block
//   #trimmed-vocab: 1
//   #threshold: <n>
//   #preserve-terminals: <true|false>
// then the removed tokens one per line in byte order.
void write_trim_manifest(const TrimmedModel& trimmed, std::ostream& out);

// Rebuilds a trimmed model against the base it was written from. A removed
// token missing from the base vocabulary is a consistency error.
TrimmedModel read_trim_manifest(std::istream& in, const BpeModel& base);

}  // namespace bpetrim

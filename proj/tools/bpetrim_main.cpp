#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bpetrim/corpus.hpp"
#include "bpetrim/errors.hpp"
#include "bpetrim/metrics.hpp"
#include "bpetrim/model_io.hpp"
#include "bpetrim/tokenizer.hpp"
#include "bpetrim/trainer.hpp"
#include "bpetrim/trimmer.hpp"

namespace {

using namespace bpetrim;

// Exit codes let scripts tell flag mistakes, unreachable files, and bad or
// inconsistent data apart.
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kIo = 3;
constexpr int kData = 4;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw IoError("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot open " + path + " for writing");
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

PretokenConfig pretoken(bool lowercase) {
  PretokenConfig config;
  config.lowercase = lowercase;
  return config;
}

WordFrequencyTable load_corpus(const std::string& path,
                               const PretokenConfig& config) {
  WordFrequencyTable table = ingest_file(path, config);
  if (table.empty()) {
    throw EmptyCorpusError("corpus " + path + " contains no words");
  }
  return table;
}

BpeModel load_model(const std::string& path,
                    const std::set<std::string>& extra_alphabet = {}) {
  std::ifstream in = open_input(path);
  try {
    return read_merges(in, extra_alphabet);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), "in " + path + ": " + e.what(), 0);
  }
}

TokenCounts load_vocab(const std::string& path) {
  std::ifstream in = open_input(path);
  try {
    return read_vocab(in);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), "in " + path + ": " + e.what(), 0);
  }
}

// A merges file cannot name atomics that never merged; the keys of a count
// file can, so they complete the alphabet when a model is read back.
std::set<std::string> atomic_shaped(const TokenCounts& counts) {
  std::set<std::string> atoms;
  for (const auto& [token, count] : counts) {
    if (looks_atomic(token, "</w>")) atoms.insert(token);
  }
  return atoms;
}

TrimmedModel load_manifest(const std::string& path, const BpeModel& base) {
  std::ifstream in = open_input(path);
  try {
    return read_trim_manifest(in, base);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), "in " + path + ": " + e.what(), 0);
  } catch (const ConsistencyError& e) {
    throw ConsistencyError("in " + path + ": " + e.what());
  }
}

SeqLenStats measure(const Segmenter& segmenter, const std::string& path) {
  std::ifstream in = open_input(path);
  return avg_sequence_length(segmenter, in);
}

struct LearnArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::uint64_t vocab_size = 0;
  std::vector<std::string> write_vocab;
  bool lowercase = false;
};

void run_learn(const LearnArgs& args, bool joint) {
  const char* cmd = joint ? "learn-joint" : "learn";
  if (joint && args.inputs.size() < 2) {
    throw InvalidArgumentError("learn-joint expects at least two --input corpora");
  }
  if (!joint && args.inputs.size() != 1) {
    throw InvalidArgumentError("learn expects exactly one --input corpus");
  }
  if (!args.write_vocab.empty() && args.write_vocab.size() != args.inputs.size()) {
    throw InvalidArgumentError(std::string(cmd) +
                               " expects one --write-vocab per --input");
  }

  PretokenConfig config = pretoken(args.lowercase);
  std::vector<WordFrequencyTable> tables;
  for (const std::string& path : args.inputs) {
    tables.push_back(load_corpus(path, config));
  }
  BpeModel model = joint ? learn_joint(tables, args.vocab_size)
                         : learn(tables.front(), args.vocab_size);
  if (model.vocab_size() < args.vocab_size) {
    std::cerr << "note: stopped at " << model.vocab_size()
              << " tokens; no pair left with count >= 2\n";
  }

  std::ofstream out = open_output(args.output);
  write_merges(model, out);
  close_output(out, args.output);
  for (std::size_t i = 0; i < args.write_vocab.size(); ++i) {
    std::ofstream vocab_out = open_output(args.write_vocab[i]);
    write_vocab(token_counts(model, tables[i]), vocab_out);
    close_output(vocab_out, args.write_vocab[i]);
  }
}

struct ApplyArgs {
  std::string model;
  std::string input;
  std::string output;
  std::string manifest;
  bool lowercase = false;
};

void run_apply(const ApplyArgs& args) {
  PretokenConfig config = pretoken(args.lowercase);
  BpeModel model = load_model(args.model);
  TrimmedModel trimmed;
  bool use_trimmed = !args.manifest.empty();
  if (use_trimmed) trimmed = load_manifest(args.manifest, model);
  Segmenter segmenter = use_trimmed ? make_segmenter(trimmed, config)
                                    : Segmenter(model, config);

  std::ifstream in = open_input(args.input);
  std::ofstream out = open_output(args.output);
  std::string line;
  while (std::getline(in, line)) {
    out << segmenter.render_line(line) << '\n';
  }
  if (in.bad()) throw IoError("read from " + args.input + " failed");
  close_output(out, args.output);
}

// trim and stats share everything but where the removed sets come from:
// trim computes them from thresholds and writes manifests, stats reads
// existing manifests (or measures the untrimmed models).
struct PairArgs {
  std::vector<std::string> models;
  std::vector<std::string> inputs;
  std::vector<std::string> tests;
  std::vector<std::string> vocabs;
  std::string output;
  bool joint = false;
  bool lowercase = false;
  std::uint64_t count_floor = 100;
  std::uint64_t embed_dim = 0;
  std::uint64_t core_params = 0;
  std::uint64_t src_threshold = 0;
  std::uint64_t tgt_threshold = 0;
  bool preserve_terminals = false;
  std::vector<std::string> write_manifest;
  std::vector<std::string> manifests;
};

void validate_pair_args(const PairArgs& args, const char* cmd) {
  std::string name(cmd);
  if (args.inputs.size() != 2) {
    throw InvalidArgumentError(name +
                               " expects exactly two --input corpora (source, target)");
  }
  if (!args.tests.empty() && args.tests.size() != 2) {
    throw InvalidArgumentError(name + " expects two --test corpora or none");
  }
  if (!args.vocabs.empty() && args.vocabs.size() != 2) {
    throw InvalidArgumentError(name + " expects two --vocab files or none");
  }
  if (args.models.size() != 1 && args.models.size() != 2) {
    throw InvalidArgumentError(name + " expects one shared --model or two");
  }
  if (args.joint && args.models.size() != 1) {
    throw InvalidArgumentError("--joint takes a single shared --model");
  }
  if (!args.joint && args.models.size() == 1) {
    throw InvalidArgumentError(name + " needs two --model files, or one with --joint");
  }
  if (!args.write_manifest.empty() && args.write_manifest.size() != 2) {
    throw InvalidArgumentError(name +
                               " expects two --write-manifest files (source, target)");
  }
  if (!args.manifests.empty() && args.manifests.size() != 2) {
    throw InvalidArgumentError(name + " expects two --manifest files (source, target)");
  }
  if ((args.embed_dim == 0) != (args.core_params == 0)) {
    throw InvalidArgumentError("--embed-dim and --core-params go together");
  }
}

// Effective size after per-language presence filtering: tokens present in
// this language's corpus and not trimmed on this side.
std::size_t present_effective_size(const std::set<std::string>& present,
                                   const TrimmedModel& trimmed) {
  std::size_t size = 0;
  for (const std::string& token : present) {
    size += trimmed.is_removed(token) ? 0 : 1;
  }
  return size;
}

void run_pair(const PairArgs& args, bool is_trim) {
  validate_pair_args(args, is_trim ? "trim" : "stats");

  PretokenConfig config = pretoken(args.lowercase);

  bool counts_from_files = !args.vocabs.empty();
  TokenCounts src_counts;
  TokenCounts tgt_counts;
  std::set<std::string> src_extra;
  std::set<std::string> tgt_extra;
  if (counts_from_files) {
    src_counts = load_vocab(args.vocabs[0]);
    tgt_counts = load_vocab(args.vocabs[1]);
    src_extra = atomic_shaped(src_counts);
    tgt_extra = atomic_shaped(tgt_counts);
    if (args.joint) {
      src_extra.insert(tgt_extra.begin(), tgt_extra.end());
    }
  }

  BpeModel src_model = load_model(args.models.front(), src_extra);
  BpeModel tgt_model_storage;
  if (args.models.size() == 2) {
    tgt_model_storage = load_model(args.models[1], tgt_extra);
  }
  const BpeModel& tgt_model =
      args.models.size() == 2 ? tgt_model_storage : src_model;

  if (!counts_from_files) {
    src_counts = token_counts(src_model, load_corpus(args.inputs[0], config));
    tgt_counts = token_counts(tgt_model, load_corpus(args.inputs[1], config));
  }

  TrimmedModel src_trimmed;
  TrimmedModel tgt_trimmed;
  if (is_trim) {
    src_trimmed = trim(src_model, src_counts,
                       TrimSpec{args.src_threshold, args.preserve_terminals});
    tgt_trimmed = trim(tgt_model, tgt_counts,
                       TrimSpec{args.tgt_threshold, args.preserve_terminals});
  } else if (!args.manifests.empty()) {
    src_trimmed = load_manifest(args.manifests[0], src_model);
    tgt_trimmed = load_manifest(args.manifests[1], tgt_model);
    if (src_trimmed.spec().preserve_terminals !=
        tgt_trimmed.spec().preserve_terminals) {
      throw ConsistencyError("manifests disagree on preserve-terminals");
    }
  } else {
    src_trimmed = make_trimmed(src_model, {}, TrimSpec{});
    tgt_trimmed = make_trimmed(tgt_model, {}, TrimSpec{});
  }

  TrimReport report;
  report.thresholds = {src_trimmed.spec().threshold, tgt_trimmed.spec().threshold};
  report.preserve_terminals = src_trimmed.spec().preserve_terminals;
  report.removed_counts = {src_trimmed.removed().size(),
                           tgt_trimmed.removed().size()};
  if (args.joint) {
    std::vector<std::set<std::string>> present =
        per_language_effective_vocab(src_model, {src_counts, tgt_counts});
    report.effective_vocab_sizes = {present_effective_size(present[0], src_trimmed),
                                    present_effective_size(present[1], tgt_trimmed)};
  } else {
    report.effective_vocab_sizes = effective_sizes(src_trimmed, tgt_trimmed);
  }

  const std::vector<std::string>& tests =
      args.tests.empty() ? args.inputs : args.tests;
  Segmenter src_base(src_model, config);
  Segmenter tgt_base(tgt_model, config);
  Segmenter src_after = make_segmenter(src_trimmed, config);
  Segmenter tgt_after = make_segmenter(tgt_trimmed, config);
  SeqLenStats src_base_len = measure(src_base, tests[0]);
  SeqLenStats tgt_base_len = measure(tgt_base, tests[1]);
  SeqLenStats src_after_len = measure(src_after, tests[0]);
  SeqLenStats tgt_after_len = measure(tgt_after, tests[1]);
  report.avg_seq_len = {src_base_len.average(), tgt_base_len.average()};
  report.rel_seq_len_delta = {
      relative_delta_percent(src_base_len.average(), src_after_len.average()),
      relative_delta_percent(tgt_base_len.average(), tgt_after_len.average())};

  report.freq_percentile_src = frequency_percentile(src_counts, args.count_floor);
  report.freq_percentile_tgt = frequency_percentile(tgt_counts, args.count_floor);
  TokenCounts overall = src_counts;
  for (const auto& [token, count] : tgt_counts) overall[token] += count;
  report.freq_percentile_overall = frequency_percentile(overall, args.count_floor);

  if (args.embed_dim > 0) {
    report.param_fraction_percent =
        param_fraction(report.effective_vocab_sizes.first,
                       report.effective_vocab_sizes.second, args.embed_dim,
                       args.core_params);
  }

  if (is_trim && !args.write_manifest.empty()) {
    std::ofstream src_out = open_output(args.write_manifest[0]);
    write_trim_manifest(src_trimmed, src_out);
    close_output(src_out, args.write_manifest[0]);
    std::ofstream tgt_out = open_output(args.write_manifest[1]);
    write_trim_manifest(tgt_trimmed, tgt_out);
    close_output(tgt_out, args.write_manifest[1]);
  }

  std::ofstream out = open_output(args.output);
  write_report(report, out);
  close_output(out, args.output);
}

struct HeuristicArgs {
  std::string input;
  std::string output;
  std::vector<std::uint64_t> sizes;
  double percentile = 0.5;
  std::uint64_t count_floor = 100;
  bool full_retrain = false;
  bool lowercase = false;
};

void run_heuristic(const HeuristicArgs& args) {
  if (!(args.percentile > 0.0 && args.percentile < 1.0)) {
    throw InvalidArgumentError("--percentile must lie strictly between 0 and 1");
  }
  for (std::size_t i = 1; i < args.sizes.size(); ++i) {
    if (args.sizes[i] <= args.sizes[i - 1]) {
      throw InvalidArgumentError("--vocab-size candidates must be strictly ascending");
    }
  }

  WordFrequencyTable table = load_corpus(args.input, pretoken(args.lowercase));
  std::vector<std::size_t> sizes(args.sizes.begin(), args.sizes.end());
  HeuristicResult result = heuristic_vocab_search(table, sizes, args.percentile,
                                                  args.count_floor,
                                                  args.full_retrain);

  std::ofstream out = open_output(args.output);
  out << std::fixed << std::setprecision(6);
  out << "chosen: " << result.chosen << '\n'
      << "none-qualified: " << (result.none_qualified ? "true" : "false") << '\n'
      << "percentile: " << args.percentile << '\n'
      << "count-floor: " << args.count_floor << '\n'
      << "candidates: " << result.candidates.size() << '\n';
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const HeuristicCandidate& c = result.candidates[i];
    std::string key = "candidate-" + std::to_string(i + 1) + "-";
    out << key << "requested: " << c.requested << '\n'
        << key << "actual-vocab: " << c.actual_vocab << '\n'
        << key << "percentile: " << c.percentile << '\n'
        << key << "qualifies: " << (c.qualifies ? "true" : "false") << '\n';
  }
  close_output(out, args.output);
}

struct SplitRareArgs {
  std::vector<std::string> models;
  std::vector<std::string> manifests;
  std::vector<std::string> inputs;
  std::string output;
  bool lowercase = false;
};

std::vector<SentencePair> read_pairs(const std::string& src_path,
                                     const std::string& tgt_path) {
  std::ifstream src = open_input(src_path);
  std::ifstream tgt = open_input(tgt_path);
  std::vector<SentencePair> pairs;
  std::string source;
  std::string target;
  std::size_t line_no = 0;
  while (true) {
    bool more_src = static_cast<bool>(std::getline(src, source));
    bool more_tgt = static_cast<bool>(std::getline(tgt, target));
    if (!more_src || !more_tgt) {
      if (more_src != more_tgt) {
        throw ConsistencyError(src_path + " and " + tgt_path +
                               " differ in line count");
      }
      break;
    }
    ++line_no;
    if (!source.empty() && source.back() == '\r') source.pop_back();
    if (!target.empty() && target.back() == '\r') target.pop_back();
    if (source.find('\t') != std::string::npos ||
        target.find('\t') != std::string::npos) {
      throw ConsistencyError("line " + std::to_string(line_no) +
                             ": tab characters break the pair-file format");
    }
    pairs.push_back({source, target});
  }
  if (src.bad() || tgt.bad()) {
    throw IoError("read from " + src_path + " / " + tgt_path + " failed");
  }
  return pairs;
}

void write_pair_file(const std::string& path,
                     const std::vector<SentencePair>& pairs) {
  std::ofstream out = open_output(path);
  for (const SentencePair& pair : pairs) {
    out << pair.source << '\t' << pair.target << '\n';
  }
  close_output(out, path);
}

void run_split_rare(const SplitRareArgs& args) {
  if (args.inputs.size() != 2) {
    throw InvalidArgumentError(
        "split-rare expects exactly two --input files (source, target)");
  }
  if (args.manifests.size() != 2) {
    throw InvalidArgumentError(
        "split-rare expects exactly two --manifest files (source, target)");
  }
  if (args.models.size() != 1 && args.models.size() != 2) {
    throw InvalidArgumentError("split-rare expects one shared --model or two");
  }

  PretokenConfig config = pretoken(args.lowercase);
  BpeModel src_model = load_model(args.models.front());
  BpeModel tgt_model_storage;
  if (args.models.size() == 2) tgt_model_storage = load_model(args.models[1]);
  const BpeModel& tgt_model =
      args.models.size() == 2 ? tgt_model_storage : src_model;
  TrimmedModel src_trimmed = load_manifest(args.manifests[0], src_model);
  TrimmedModel tgt_trimmed = load_manifest(args.manifests[1], tgt_model);

  std::vector<SentencePair> pairs = read_pairs(args.inputs[0], args.inputs[1]);
  Segmenter src_base(src_model, config);
  Segmenter tgt_base(tgt_model, config);
  Segmenter src_after = make_segmenter(src_trimmed, config);
  Segmenter tgt_after = make_segmenter(tgt_trimmed, config);
  RareSentenceSplit split =
      rare_sentence_split(pairs, src_base, tgt_base, src_after, tgt_after);

  write_pair_file(args.output + ".source-mismatch.tsv", split.source_mismatch);
  write_pair_file(args.output + ".source-match.tsv", split.source_match);
  write_pair_file(args.output + ".target-mismatch.tsv", split.target_mismatch);
  write_pair_file(args.output + ".target-match.tsv", split.target_match);
  write_pair_file(args.output + ".both-mismatch.tsv", split.both_mismatch);

  std::string summary_path = args.output + ".summary";
  std::ofstream out = open_output(summary_path);
  out << "pairs: " << pairs.size() << '\n'
      << "source-mismatch: " << split.source_mismatch.size() << '\n'
      << "source-match: " << split.source_match.size() << '\n'
      << "target-mismatch: " << split.target_mismatch.size() << '\n'
      << "target-match: " << split.target_match.size() << '\n'
      << "both-mismatch: " << split.both_mismatch.size() << '\n';
  close_output(out, summary_path);
}

void add_pair_options(CLI::App* cmd, PairArgs& args, bool is_trim) {
  cmd->add_option("--model", args.models,
                  "merges file; pass twice for separate source and target models")
      ->required();
  cmd->add_option("--input", args.inputs,
                  "corpora the token counts come from: source, then target")
      ->required();
  cmd->add_option("--test", args.tests,
                  "corpora for the sequence-length fields; default the --input files");
  cmd->add_option("--vocab", args.vocabs,
                  "per-side count files (from --write-vocab): source, then target; "
                  "their counts replace the --input recount and their atomic "
                  "entries complete the model alphabet");
  cmd->add_option("--output", args.output, "report file")->required();
  cmd->add_flag("--joint", args.joint,
                "shared model; report per-language presence-filtered sizes");
  cmd->add_option("--count-floor", args.count_floor,
                  "count floor for the frequency-percentile fields");
  cmd->add_option("--embed-dim", args.embed_dim, "embedding dimension")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--core-params", args.core_params,
                  "non-embedding parameter count")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--lowercase", args.lowercase, "ASCII-lowercase all corpora");
  if (is_trim) {
    cmd->add_option("--src-threshold", args.src_threshold,
                    "remove source tokens occurring at most this often");
    cmd->add_option("--tgt-threshold", args.tgt_threshold,
                    "remove target tokens occurring at most this often");
    cmd->add_flag("--preserve-terminals", args.preserve_terminals,
                  "keep tokens no merge rule builds on");
    cmd->add_option("--write-manifest", args.write_manifest,
                    "trim manifests to write: source, then target");
  } else {
    cmd->add_option("--manifest", args.manifests,
                    "trim manifests to measure: source, then target");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"byte-pair encoding with threshold vocabulary trimming"};
  app.require_subcommand(1);

  LearnArgs learn_args;
  CLI::App* learn_cmd =
      app.add_subcommand("learn", "train a model, write its merges file");
  learn_cmd->add_option("--input", learn_args.inputs, "training corpus")->required();
  learn_cmd->add_option("--output", learn_args.output, "merges file to write")
      ->required();
  learn_cmd
      ->add_option("--vocab-size", learn_args.vocab_size,
                   "target vocabulary size, atomic symbols included")
      ->required()
      ->check(CLI::PositiveNumber);
  learn_cmd->add_option("--write-vocab", learn_args.write_vocab,
                        "also write token counts over the training corpus");
  learn_cmd->add_flag("--lowercase", learn_args.lowercase,
                      "ASCII-lowercase the corpus");

  LearnArgs joint_args;
  CLI::App* joint_cmd = app.add_subcommand(
      "learn-joint", "train one shared model over several corpora");
  joint_cmd
      ->add_option("--input", joint_args.inputs,
                   "training corpora; pass once per language")
      ->required();
  joint_cmd->add_option("--output", joint_args.output, "merges file to write")
      ->required();
  joint_cmd
      ->add_option("--vocab-size", joint_args.vocab_size,
                   "target vocabulary size, atomic symbols included")
      ->required()
      ->check(CLI::PositiveNumber);
  joint_cmd->add_option("--write-vocab", joint_args.write_vocab,
                        "per-language count files, one per --input");
  joint_cmd->add_flag("--lowercase", joint_args.lowercase,
                      "ASCII-lowercase the corpora");

  ApplyArgs apply_args;
  CLI::App* apply_cmd = app.add_subcommand("apply", "tokenize text with a model");
  apply_cmd->add_option("--model", apply_args.model, "merges file")->required();
  apply_cmd->add_option("--input", apply_args.input, "text to tokenize")->required();
  apply_cmd->add_option("--output", apply_args.output, "tokenized text to write")
      ->required();
  apply_cmd->add_option("--manifest", apply_args.manifest,
                        "trim manifest; tokenize with the trimmed vocabulary");
  apply_cmd->add_flag("--lowercase", apply_args.lowercase,
                      "ASCII-lowercase the text");

  PairArgs trim_args;
  CLI::App* trim_cmd = app.add_subcommand(
      "trim", "drop rare tokens, write manifests and a report");
  add_pair_options(trim_cmd, trim_args, true);

  PairArgs stats_args;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "measure models, write a report");
  add_pair_options(stats_cmd, stats_args, false);

  HeuristicArgs heuristic_args;
  CLI::App* heuristic_cmd = app.add_subcommand(
      "heuristic", "pick the largest vocabulary size that stays frequent");
  heuristic_cmd->add_option("--input", heuristic_args.input, "training corpus")
      ->required();
  heuristic_cmd
      ->add_option("--output", heuristic_args.output, "chosen-size report file")
      ->required();
  heuristic_cmd
      ->add_option("--vocab-size", heuristic_args.sizes,
                   "candidate sizes, ascending; pass once per candidate")
      ->required();
  heuristic_cmd->add_option("--percentile", heuristic_args.percentile,
                            "required fraction of tokens above the floor");
  heuristic_cmd->add_option("--count-floor", heuristic_args.count_floor,
                            "count a token must exceed");
  heuristic_cmd->add_flag("--full-retrain", heuristic_args.full_retrain,
                          "train every candidate from scratch");
  heuristic_cmd->add_flag("--lowercase", heuristic_args.lowercase,
                          "ASCII-lowercase the corpus");

  SplitRareArgs split_args;
  CLI::App* split_cmd = app.add_subcommand(
      "split-rare", "split a parallel test set by tokenization mismatch");
  split_cmd
      ->add_option("--model", split_args.models,
                   "merges file; pass twice for separate source and target models")
      ->required();
  split_cmd
      ->add_option("--manifest", split_args.manifests,
                   "trim manifests: source, then target")
      ->required();
  split_cmd
      ->add_option("--input", split_args.inputs,
                   "line-aligned test files: source, then target")
      ->required();
  split_cmd
      ->add_option("--output", split_args.output,
                   "path prefix for the five pair files and the summary")
      ->required();
  split_cmd->add_flag("--lowercase", split_args.lowercase,
                      "ASCII-lowercase the sentences");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*learn_cmd) run_learn(learn_args, false);
    if (*joint_cmd) run_learn(joint_args, true);
    if (*apply_cmd) run_apply(apply_args);
    if (*trim_cmd) run_pair(trim_args, true);
    if (*stats_cmd) run_pair(stats_args, false);
    if (*heuristic_cmd) run_heuristic(heuristic_args);
    if (*split_cmd) run_split_rare(split_args);
  } catch (const InvalidArgumentError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}

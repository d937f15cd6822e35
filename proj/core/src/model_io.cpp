#include "bpetrim/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_set>
#include <vector>

#include "bpetrim/errors.hpp"

namespace bpetrim {
namespace {

using Kind = ParseError::Kind;

void require_readable(const std::istream& in) {
  if (in.fail()) throw IoError("unreadable input stream");
}

void require_not_bad(const std::istream& in) {
  if (in.bad()) throw IoError("read failure");
}

// Lines are \n-separated; a single trailing \r is dropped so CRLF files of
// otherwise valid content still parse.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  ++line_no;
  return true;
}

std::uint64_t parse_count(std::string_view text, std::size_t line_no) {
  std::uint64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ParseError(Kind::kMalformedLine,
                     "expected an unsigned count, got: " + std::string(text),
                     line_no);
  }
  return value;
}

}  // namespace

void write_merges(const BpeModel& model, std::ostream& out) {
  out << kMergesHeader << '\n';
  for (const MergeRule& rule : model.merges()) {
    out << rule.left << ' ' << rule.right << '\n';
  }
  if (!out) throw IoError("write failure while emitting merges");
}

BpeModel read_merges(std::istream& in, const std::set<std::string>& extra_alphabet,
                     const std::string& end_of_word_marker) {
  require_readable(in);
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) {
    throw ParseError(Kind::kUnknownHeader, "missing merges header", 1);
  }
  if (line != kMergesHeader) {
    throw ParseError(Kind::kUnknownHeader, "unknown merges header: " + line, 1);
  }
  std::set<std::string> alphabet;
  for (const std::string& symbol : extra_alphabet) {
    if (!looks_atomic(symbol, end_of_word_marker)) {
      throw InvalidArgumentError("extra alphabet entry is not atomic-shaped: " +
                                 symbol);
    }
    alphabet.insert(symbol);
  }
  std::unordered_set<std::string> vocab(alphabet.begin(), alphabet.end());
  std::vector<std::pair<std::string, std::string>> pairs;
  while (next_line(in, line, line_no)) {
    const std::size_t space = line.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 == line.size() ||
        line.find(' ', space + 1) != std::string::npos) {
      throw ParseError(Kind::kMalformedLine,
                       "expected 'left right', got: " + line, line_no);
    }
    std::string left = line.substr(0, space);
    std::string right = line.substr(space + 1);
    for (const std::string& component : {left, right}) {
      if (vocab.count(component)) continue;
      if (!looks_atomic(component, end_of_word_marker)) {
        throw ParseError(Kind::kUndefinedToken,
                         "rule references undefined token: " + component,
                         line_no);
      }
      alphabet.insert(component);
      vocab.insert(component);
    }
    std::string merged = left + right;
    if (!vocab.insert(merged).second) {
      throw ParseError(Kind::kDuplicateToken,
                       "duplicate merged token: " + merged, line_no);
    }
    pairs.emplace_back(std::move(left), std::move(right));
  }
  require_not_bad(in);
  return BpeModel::from_merges(std::move(alphabet), pairs);
}

void write_vocab(const TokenCounts& counts, std::ostream& out) {
  std::vector<std::pair<std::string_view, std::uint64_t>> rows;
  rows.reserve(counts.size());
  for (const auto& [token, count] : counts) rows.emplace_back(token, count);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (const auto& [token, count] : rows) {
    out << token << ' ' << count << '\n';
  }
  if (!out) throw IoError("write failure while emitting vocabulary counts");
}

TokenCounts read_vocab(std::istream& in) {
  require_readable(in);
  TokenCounts counts;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    const std::size_t space = line.rfind(' ');
    if (space == std::string::npos || space == 0 || space + 1 == line.size()) {
      throw ParseError(Kind::kMalformedLine,
                       "expected 'token count', got: " + line, line_no);
    }
    std::string token = line.substr(0, space);
    if (token.find(' ') != std::string::npos) {
      throw ParseError(Kind::kMalformedLine,
                       "token contains a space: " + token, line_no);
    }
    const std::uint64_t count = parse_count(
        std::string_view(line).substr(space + 1), line_no);
    if (!counts.emplace(std::move(token), count).second) {
      throw ParseError(Kind::kDuplicateToken,
                       "duplicate token: " + line.substr(0, space), line_no);
    }
  }
  require_not_bad(in);
  return counts;
}

void write_trim_manifest(const TrimmedModel& trimmed, std::ostream& out) {
  out << "#trimmed-vocab: 1\n"
      << "#threshold: " << trimmed.spec().threshold << '\n'
      << "#preserve-terminals: "
      << (trimmed.spec().preserve_terminals ? "true" : "false") << '\n';
  for (const std::string& token : trimmed.removed()) {
    out << token << '\n';
  }
  if (!out) throw IoError("write failure while emitting trim manifest");
}

TrimmedModel read_trim_manifest(std::istream& in, const BpeModel& base) {
  require_readable(in);
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no) || line != "#trimmed-vocab: 1") {
    throw ParseError(Kind::kUnknownHeader,
                     "missing or unknown trim manifest header", 1);
  }
  TrimSpec spec;
  constexpr std::string_view kThresholdKey = "#threshold: ";
  if (!next_line(in, line, line_no)) {
    throw ParseError(Kind::kMalformedLine, "expected '#threshold: <n>'", line_no + 1);
  }
  if (!line.starts_with(kThresholdKey)) {
    throw ParseError(Kind::kMalformedLine, "expected '#threshold: <n>'", line_no);
  }
  spec.threshold =
      parse_count(std::string_view(line).substr(kThresholdKey.size()), line_no);
  constexpr std::string_view kPreserveKey = "#preserve-terminals: ";
  if (!next_line(in, line, line_no)) {
    throw ParseError(Kind::kMalformedLine,
                     "expected '#preserve-terminals: <true|false>'", line_no + 1);
  }
  if (!line.starts_with(kPreserveKey)) {
    throw ParseError(Kind::kMalformedLine,
                     "expected '#preserve-terminals: <true|false>'", line_no);
  }
  std::string_view flag = std::string_view(line).substr(kPreserveKey.size());
  if (flag == "true") {
    spec.preserve_terminals = true;
  } else if (flag == "false") {
    spec.preserve_terminals = false;
  } else {
    throw ParseError(Kind::kMalformedLine,
                     "preserve-terminals must be true or false", line_no);
  }
  std::set<std::string> removed;
  while (next_line(in, line, line_no)) {
    if (line.empty()) {
      throw ParseError(Kind::kMalformedLine, "empty removed-token line", line_no);
    }
    if (!removed.insert(line).second) {
      throw ParseError(Kind::kDuplicateToken, "duplicate removed token: " + line,
                       line_no);
    }
  }
  require_not_bad(in);
  return make_trimmed(base, std::move(removed), spec);
}

}  // namespace bpetrim

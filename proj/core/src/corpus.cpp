#include "bpetrim/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "bpetrim/errors.hpp"

namespace bpetrim {
namespace {

// Whitespace set used by line splitting: the codepoints Python's str.split()
// treats as whitespace, which is what the usual preprocessing pipelines do.
bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x1C: case 0x1D: case 0x1E: case 0x1F:
    case 0x20: case 0x85: case 0xA0:
    case 0x1680:
    case 0x2000: case 0x2001: case 0x2002: case 0x2003: case 0x2004:
    case 0x2005: case 0x2006: case 0x2007: case 0x2008: case 0x2009:
    case 0x200A:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F:
    case 0x3000:
      return true;
    default:
      return false;
  }
}

bool is_continuation(unsigned char c) { return (c & 0xc0) == 0x80; }

// Byte length of the symbol starting at `pos`: the full codepoint when the
// bytes form valid UTF-8, otherwise 1 so each invalid byte stands alone.
std::size_t symbol_length(std::string_view text, std::size_t pos) {
  unsigned char lead = static_cast<unsigned char>(text[pos]);
  std::size_t len;
  if (lead < 0x80) {
    return 1;
  } else if (lead >= 0xf0) {
    len = 4;
  } else if (lead >= 0xe0) {
    len = 3;
  } else if (lead >= 0xc0) {
    len = 2;
  } else {
    return 1;  // stray continuation byte
  }
  if (pos + len > text.size()) return 1;
  for (std::size_t i = 1; i < len; ++i) {
    if (!is_continuation(static_cast<unsigned char>(text[pos + i]))) return 1;
  }
  return len;
}

// Decodes the codepoint starting at `pos`; advances `pos` past it. Invalid
// bytes decode to 0xFFFD, which is never whitespace.
char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  std::size_t len = symbol_length(text, pos);
  unsigned char lead = static_cast<unsigned char>(text[pos]);
  if (len == 1) {
    ++pos;
    return lead < 0x80 ? lead : 0xfffd;
  }
  char32_t cp = lead & (0x7f >> len);
  for (std::size_t i = 1; i < len; ++i) {
    cp = (cp << 6) | (static_cast<unsigned char>(text[pos + i]) & 0x3f);
  }
  pos += len;
  return cp;
}

std::string fold_ascii_lower(std::string_view raw) {
  std::string out(raw);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

std::size_t WordHash::operator()(const Word& word) const noexcept {
  std::size_t seed = word.size();
  std::hash<std::string> h;
  for (const Symbol& s : word) {
    seed ^= h(s) + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
  }
  return seed;
}

void WordFrequencyTable::add(const Word& word, std::uint64_t count) {
  if (word.empty() || count == 0) {
    throw InvalidArgumentError("cannot add an empty word or a zero count");
  }
  entries_[word] += count;
  total_words_ += count;
  for (const Symbol& s : word) alphabet_.insert(s);
}

bool WordFrequencyTable::operator==(const WordFrequencyTable& other) const {
  return config_ == other.config_ && total_words_ == other.total_words_ &&
         alphabet_ == other.alphabet_ && entries_ == other.entries_;
}

Word split_word(std::string_view raw, const PretokenConfig& config) {
  if (raw.empty()) {
    throw InvalidArgumentError("cannot split an empty word");
  }
  if (config.end_of_word_marker.empty()) {
    throw InvalidArgumentError("end-of-word marker must be non-empty");
  }
  if (raw.find(config.end_of_word_marker) != std::string_view::npos) {
    throw ConsistencyError("corpus word contains the end-of-word marker: " +
                           std::string(raw));
  }
  Word word;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    std::size_t len = symbol_length(raw, pos);
    word.emplace_back(raw.substr(pos, len));
    pos += len;
  }
  word.back() += config.end_of_word_marker;
  return word;
}

std::string flatten(const Word& word) {
  std::string out;
  for (const Symbol& s : word) out += s;
  return out;
}

bool looks_atomic(std::string_view token, std::string_view end_of_word_marker) {
  if (!end_of_word_marker.empty() && token.size() > end_of_word_marker.size() &&
      token.ends_with(end_of_word_marker)) {
    token.remove_suffix(end_of_word_marker.size());
  }
  return !token.empty() && symbol_length(token, 0) == token.size();
}

std::vector<std::string> split_line_words(std::string_view line,
                                          const PretokenConfig& config) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  std::size_t word_start = 0;
  bool in_word = false;
  auto emit = [&](std::size_t end) {
    std::string_view raw = line.substr(word_start, end - word_start);
    words.push_back(config.lowercase ? fold_ascii_lower(raw) : std::string(raw));
  };
  while (pos < line.size()) {
    std::size_t cp_start = pos;
    char32_t cp = decode_utf8(line, pos);
    if (is_whitespace(cp)) {
      if (in_word) {
        emit(cp_start);
        in_word = false;
      }
    } else if (!in_word) {
      word_start = cp_start;
      in_word = true;
    }
  }
  if (in_word) emit(line.size());
  return words;
}

WordFrequencyTable ingest(std::istream& lines, const PretokenConfig& config) {
  if (lines.fail()) {
    throw IoError("unreadable input stream");
  }
  WordFrequencyTable table(config);
  std::string line;
  while (std::getline(lines, line)) {
    for (const std::string& raw : split_line_words(line, config)) {
      table.add(split_word(raw, config), 1);
    }
  }
  if (lines.bad()) {
    throw IoError("read failure while ingesting corpus");
  }
  return table;
}

WordFrequencyTable ingest_file(const std::filesystem::path& path,
                               const PretokenConfig& config) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open corpus file: " + path.string());
  }
  return ingest(in, config);
}

WordFrequencyTable concat(const std::vector<WordFrequencyTable>& tables) {
  if (tables.empty()) {
    throw InvalidArgumentError("concat needs at least one table");
  }
  for (const WordFrequencyTable& t : tables) {
    if (!(t.config() == tables.front().config())) {
      throw ConfigMismatchError(
          "cannot concatenate tables built under different pre-tokenization configs");
    }
  }
  WordFrequencyTable out(tables.front().config());
  for (const WordFrequencyTable& t : tables) {
    for (const auto& [word, count] : t.entries()) {
      out.add(word, count);
    }
  }
  return out;
}

void write_table_tsv(const WordFrequencyTable& table, std::ostream& out) {
  std::vector<std::pair<std::string, std::uint64_t>> rows;
  rows.reserve(table.entries().size());
  for (const auto& [word, count] : table.entries()) {
    rows.emplace_back(flatten(word), count);
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [surface, count] : rows) {
    out << surface << '\t' << count << '\n';
  }
}

}  // namespace bpetrim

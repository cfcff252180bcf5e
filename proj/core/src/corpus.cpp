#include "nodal/corpus.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "nodal/error.hpp"

namespace nodal {

namespace {

std::string normalize_nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return std::string(text);
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString composed = nfc->normalize(source, status);
  if (U_FAILURE(status)) return std::string(text);
  std::string out;
  composed.toUTF8String(out);
  return out;
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, c, error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr == s.data()) return std::nullopt;
  return value;
}

// "12", "12." or "12 Some text" at the start of a stanza.
std::optional<int> leading_number(std::string_view block) {
  std::string_view s = trim(block);
  std::size_t digits = 0;
  while (digits < s.size() && s[digits] >= '0' && s[digits] <= '9') ++digits;
  if (digits == 0) return std::nullopt;
  std::size_t next = digits;
  if (next < s.size() && s[next] == '.') ++next;
  if (next < s.size() && s[next] != ' ' && s[next] != '\t' && s[next] != '\n' &&
      s[next] != '\r')
    return std::nullopt;
  return parse_int(s.substr(0, digits));
}

bool is_comment(std::string_view line) {
  std::string_view t = trim(line);
  return !t.empty() && t.front() == '#';
}

struct RawBlock {
  std::string text;
  std::optional<int> number;
};

void flush(std::vector<RawBlock>& blocks, std::vector<std::string_view>& lines,
           std::optional<int> number) {
  if (lines.empty()) return;
  RawBlock block;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) block.text += '\n';
    block.text += lines[i];
  }
  block.number = number ? number : leading_number(block.text);
  blocks.push_back(std::move(block));
  lines.clear();
}

std::size_t count_whitespace_words(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                       c == '\f' || c == '\v';
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

}  // namespace

SplitPolicy SplitPolicy::parse(std::string_view text) {
  SplitPolicy policy;
  if (text == "blank-line" || text.empty()) return policy;
  if (text.starts_with("marker:")) {
    policy.kind = DelimiterKind::kMarker;
    policy.marker = std::string(text.substr(7));
    if (policy.marker.empty())
      throw Error(ErrorCode::kInvalidArgument, "empty delimiter marker");
    return policy;
  }
  if (text.starts_with("lines:")) {
    auto n = parse_int(text.substr(6));
    if (!n || *n <= 0)
      throw Error(ErrorCode::kInvalidArgument,
                  "bad line count in delimiter '" + std::string(text) + "'");
    policy.kind = DelimiterKind::kFixedLines;
    policy.line_count = static_cast<std::size_t>(*n);
    return policy;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown delimiter policy '" + std::string(text) +
                  "' (expected blank-line, marker:STR or lines:N)");
}

std::vector<std::string> tokenize(std::string_view text) {
  const std::string composed = normalize_nfc(text);
  std::vector<std::string> tokens;
  std::string current;
  std::size_t letters = 0;

  const auto finish = [&] {
    if (letters >= 2) tokens.push_back(current);
    current.clear();
    letters = 0;
  };

  const auto* bytes = reinterpret_cast<const uint8_t*>(composed.data());
  const auto length = static_cast<int32_t>(composed.size());
  int32_t pos = 0;
  while (pos < length) {
    UChar32 c;
    U8_NEXT(bytes, pos, length, c);
    if (c >= 0 && u_isalpha(c)) {
      append_utf8(current, u_tolower(c));
      ++letters;
    } else if (c >= 0 && letters > 0 && (U_GET_GC_MASK(c) & U_GC_M_MASK)) {
      // Combining mark that did not compose: stays with its letter.
      append_utf8(current, c);
    } else {
      finish();
    }
  }
  finish();
  return tokens;
}

std::vector<Unit> split_units(std::string_view raw_text,
                              const SplitPolicy& policy,
                              std::string_view variant_id) {
  std::vector<RawBlock> blocks;
  std::vector<std::string_view> pending;
  std::optional<int> pending_number;
  bool seen_marker = false;

  for (std::string_view line : split_lines(raw_text)) {
    switch (policy.kind) {
      case DelimiterKind::kBlankLine:
        if (is_comment(line)) break;
        if (trim(line).empty()) {
          flush(blocks, pending, std::nullopt);
        } else {
          pending.push_back(line);
        }
        break;
      case DelimiterKind::kMarker: {
        std::string_view t = trim(line);
        if (t.starts_with(policy.marker)) {
          if (seen_marker) flush(blocks, pending, pending_number);
          pending.clear();
          seen_marker = true;
          pending_number = parse_int(trim(t.substr(policy.marker.size())));
          break;
        }
        // Text before the first marker is preamble (titles, notes).
        if (seen_marker && !is_comment(line) && !t.empty())
          pending.push_back(line);
        break;
      }
      case DelimiterKind::kFixedLines:
        if (is_comment(line) || trim(line).empty()) break;
        pending.push_back(line);
        if (pending.size() == policy.line_count)
          flush(blocks, pending, std::nullopt);
        break;
    }
  }
  flush(blocks, pending,
        policy.kind == DelimiterKind::kMarker ? pending_number : std::nullopt);

  std::vector<Unit> units;
  for (RawBlock& block : blocks) {
    std::vector<std::string> tokens = tokenize(block.text);
    if (tokens.size() < std::max<std::size_t>(policy.min_tokens, 1)) continue;
    Unit unit;
    unit.variant_id = std::string(variant_id);
    unit.seq = static_cast<int>(units.size()) + 1;
    unit.source_number = block.number;
    unit.raw = std::move(block.text);
    unit.tokens = std::move(tokens);
    units.push_back(std::move(unit));
  }
  if (units.empty()) {
    std::string where = variant_id.empty()
                            ? std::string("input")
                            : "variant '" + std::string(variant_id) + "'";
    throw Error(ErrorCode::kCorpusEmpty, "no units found in " + where);
  }
  return units;
}

Vocabulary::Vocabulary(std::map<std::string, std::int64_t> occurrences) {
  words_.reserve(occurrences.size());
  for (auto& [word, count] : occurrences) {
    index_.emplace(word, words_.size());
    words_.push_back(word);
    occurrences_.emplace(word, count);
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::int64_t Vocabulary::total_occurrences(std::string_view word) const {
  auto it = occurrences_.find(word);
  return it == occurrences_.end() ? 0 : it->second;
}

ContingencyMatrix::ContingencyMatrix(std::size_t rows, std::size_t cols,
                                     std::vector<std::int64_t> counts,
                                     std::vector<std::string> row_labels,
                                     std::vector<std::string> col_labels)
    : rows_(rows),
      cols_(cols),
      counts_(std::move(counts)),
      row_totals_(rows, 0),
      col_totals_(cols, 0),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
  if (rows == 0 || cols == 0 || counts_.size() != rows * cols)
    throw Error(ErrorCode::kInvalidArgument,
                "contingency table shape does not match its data");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::int64_t v = counts_[i * cols + j];
      if (v < 0)
        throw Error(ErrorCode::kInvalidArgument,
                    "contingency table has a negative count");
      row_totals_[i] += v;
      col_totals_[j] += v;
    }
  }
  for (std::size_t i = 0; i < rows; ++i)
    if (row_totals_[i] == 0)
      throw Error(ErrorCode::kDegenerateCorpus,
                  "contingency table row " + std::to_string(i) + " is empty");
  for (std::size_t j = 0; j < cols; ++j)
    if (col_totals_[j] == 0)
      throw Error(ErrorCode::kDegenerateCorpus,
                  "contingency table column " + std::to_string(j) +
                      " is empty");
  grand_total_ = std::accumulate(row_totals_.begin(), row_totals_.end(),
                                 std::int64_t{0});
  const auto n = static_cast<double>(grand_total_);
  row_masses_.resize(rows);
  col_masses_.resize(cols);
  for (std::size_t i = 0; i < rows; ++i)
    row_masses_[i] = static_cast<double>(row_totals_[i]) / n;
  for (std::size_t j = 0; j < cols; ++j)
    col_masses_[j] = static_cast<double>(col_totals_[j]) / n;
  if (row_labels_.empty())
    for (std::size_t i = 0; i < rows; ++i)
      row_labels_.push_back(std::to_string(i + 1));
  if (col_labels_.empty())
    for (std::size_t j = 0; j < cols; ++j)
      col_labels_.push_back(std::to_string(j + 1));
  if (row_labels_.size() != rows || col_labels_.size() != cols)
    throw Error(ErrorCode::kInvalidArgument, "label count mismatch");
}

std::vector<double> ContingencyMatrix::row_profile(std::size_t i) const {
  std::vector<double> profile(cols_);
  const auto total = static_cast<double>(row_totals_[i]);
  for (std::size_t j = 0; j < cols_; ++j)
    profile[j] = static_cast<double>(counts_[i * cols_ + j]) / total;
  return profile;
}

std::string ContingencyMatrix::fingerprint() const {
  // FNV-1a over the shape and counts.
  std::uint64_t h = 1469598103934665603ull;
  const auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(rows_);
  mix(cols_);
  for (std::int64_t v : counts_) mix(static_cast<std::uint64_t>(v));
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

std::string unit_label(const Unit& unit) {
  return unit.variant_id.empty() ? std::to_string(unit.seq)
                                 : unit.variant_id + ":" +
                                       std::to_string(unit.seq);
}

CorpusTable build_matrix(std::span<const Unit> units) {
  std::map<std::string, std::int64_t> occurrences;
  std::size_t nonempty = 0;
  for (const Unit& unit : units) {
    if (unit.tokens.empty()) continue;
    ++nonempty;
    for (const std::string& token : unit.tokens) ++occurrences[token];
  }
  if (nonempty < 2)
    throw Error(ErrorCode::kDegenerateCorpus,
                "need at least 2 nonempty units, got " +
                    std::to_string(nonempty));

  Vocabulary vocab(std::move(occurrences));
  const std::size_t cols = vocab.size();
  std::vector<std::int64_t> counts;
  counts.reserve(nonempty * cols);
  std::vector<std::string> labels;
  for (const Unit& unit : units) {
    if (unit.tokens.empty()) continue;
    const std::size_t base = counts.size();
    counts.resize(base + cols, 0);
    for (const std::string& token : unit.tokens)
      ++counts[base + *vocab.index_of(token)];
    labels.push_back(unit_label(unit));
  }
  ContingencyMatrix matrix(nonempty, cols, std::move(counts),
                           std::move(labels), vocab.words());
  return {std::move(matrix), std::move(vocab)};
}

CorpusStats corpus_stats(std::span<const Unit> units) {
  CorpusStats stats;
  std::map<std::string_view, int> distinct;
  for (const Unit& unit : units) {
    if (!unit.tokens.empty()) ++stats.n_units;
    stats.raw_word_tokens += count_whitespace_words(unit.raw);
    stats.filtered_word_tokens += unit.tokens.size();
    for (const std::string& token : unit.tokens) distinct[token] = 1;
  }
  stats.n_unique = distinct.size();
  return stats;
}

CorpusStats corpus_stats(std::span<const Unit> units,
                         const ContingencyMatrix& matrix,
                         const Vocabulary& vocab) {
  CorpusStats stats = corpus_stats(units);
  stats.n_units = matrix.rows();
  stats.n_unique = vocab.size();
  return stats;
}

std::string to_json(const CorpusStats& stats, std::string_view label) {
  nlohmann::ordered_json j;
  j["variant_id"] = label;
  j["n_stanzas"] = stats.n_units;
  j["total_words"] = stats.raw_word_tokens;
  j["filtered_words"] = stats.filtered_word_tokens;
  j["unique_words"] = stats.n_unique;
  return j.dump();
}

std::vector<CorpusSource> discover_corpus(const std::filesystem::path& where) {
  namespace fs = std::filesystem;
  std::vector<CorpusSource> sources;
  std::error_code ec;
  if (fs::is_directory(where, ec)) {
    for (const auto& entry : fs::directory_iterator(where, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt")
        sources.push_back({entry.path().stem().string(), entry.path()});
    }
    if (ec)
      throw Error(ErrorCode::kIo, "cannot list '" + where.string() + "'");
  } else if (fs::is_regular_file(where, ec)) {
    std::ifstream in(where);
    if (!in) throw Error(ErrorCode::kIo, "cannot read '" + where.string() + "'");
    nlohmann::json manifest;
    try {
      in >> manifest;
      for (const auto& v : manifest.at("variants")) {
        fs::path p = v.at("path").get<std::string>();
        if (p.is_relative()) p = where.parent_path() / p;
        sources.push_back({v.at("id").get<std::string>(), p});
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bad manifest '" + where.string() + "': " + e.what());
    }
  } else {
    throw Error(ErrorCode::kIo, "corpus path '" + where.string() +
                                    "' is neither a directory nor a file");
  }
  std::sort(sources.begin(), sources.end(),
            [](const CorpusSource& a, const CorpusSource& b) {
              return a.id < b.id;
            });
  for (std::size_t i = 1; i < sources.size(); ++i)
    if (sources[i].id == sources[i - 1].id)
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate variant id '" + sources[i].id + "'");
  if (sources.empty())
    throw Error(ErrorCode::kCorpusEmpty,
                "no variants found in '" + where.string() + "'");
  return sources;
}

Variant load_variant(const CorpusSource& source, const SplitPolicy& policy) {
  std::ifstream in(source.path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIo, "cannot read variant '" + source.id +
                                    "' from '" + source.path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return {source.id, split_units(buffer.str(), policy, source.id)};
}

}  // namespace nodal

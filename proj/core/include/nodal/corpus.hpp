#pragma once

// Corpus ingestion: variant texts -> ordered units -> word-count table.
//
// Tokens are maximal runs of letters (Unicode, NFC-composed), lowercased,
// with every other character acting as a boundary; runs shorter than two
// letters are dropped. No stemming and no stop-word list.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nodal {

/// One stanza (or scene) of a variant, in document order.
struct Unit {
  std::string variant_id;
  int seq = 0;                       // 1-based, consecutive after dropping
  std::optional<int> source_number;  // number printed in the source, if any
  std::string raw;
  std::vector<std::string> tokens;
};

enum class DelimiterKind {
  kBlankLine,   // one or more blank lines end a unit
  kMarker,      // a line starting with `marker` starts a new unit
  kFixedLines,  // every `line_count` non-comment lines form a unit
};

struct SplitPolicy {
  DelimiterKind kind = DelimiterKind::kBlankLine;
  std::string marker;
  std::size_t line_count = 4;
  // Units with fewer tokens than this are dropped before numbering.
  std::size_t min_tokens = 1;

  /// Parses "blank-line", "marker:STR" or "lines:N".
  static SplitPolicy parse(std::string_view text);
};

std::vector<std::string> tokenize(std::string_view text);

/// Splits one variant's text into units. Lines whose first non-blank
/// character is '#' are comments (except when they match the marker).
/// Throws Error(kCorpusEmpty) if nothing survives.
std::vector<Unit> split_units(std::string_view raw_text,
                              const SplitPolicy& policy = {},
                              std::string_view variant_id = {});

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::map<std::string, std::int64_t> occurrences);

  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  std::optional<std::size_t> index_of(std::string_view word) const;
  std::int64_t total_occurrences(std::string_view word) const;

 private:
  std::vector<std::string> words_;  // lexicographic byte order
  std::map<std::string, std::int64_t, std::less<>> occurrences_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Dense nonnegative count table with no empty rows or columns.
class ContingencyMatrix {
 public:
  ContingencyMatrix() = default;
  /// Validates shape, nonnegativity and the no-empty-row/column rule.
  ContingencyMatrix(std::size_t rows, std::size_t cols,
                    std::vector<std::int64_t> counts,
                    std::vector<std::string> row_labels = {},
                    std::vector<std::string> col_labels = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return counts_[i * cols_ + j];
  }
  std::span<const std::int64_t> row(std::size_t i) const {
    return {counts_.data() + i * cols_, cols_};
  }
  std::int64_t grand_total() const noexcept { return grand_total_; }
  const std::vector<double>& row_masses() const noexcept { return row_masses_; }
  const std::vector<double>& col_masses() const noexcept { return col_masses_; }
  std::int64_t row_total(std::size_t i) const { return row_totals_[i]; }
  std::int64_t col_total(std::size_t j) const { return col_totals_[j]; }
  const std::vector<std::string>& row_labels() const noexcept {
    return row_labels_;
  }
  const std::vector<std::string>& col_labels() const noexcept {
    return col_labels_;
  }
  /// Row i divided by its total.
  std::vector<double> row_profile(std::size_t i) const;
  /// Stable content hash of shape and counts.
  std::string fingerprint() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> row_totals_;
  std::vector<std::int64_t> col_totals_;
  std::vector<double> row_masses_;
  std::vector<double> col_masses_;
  std::int64_t grand_total_ = 0;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

struct CorpusTable {
  ContingencyMatrix matrix;
  Vocabulary vocabulary;
};

/// Rows are units in order; columns are the sorted vocabulary. Units with
/// no tokens are skipped. Throws Error(kDegenerateCorpus) when fewer than
/// two nonempty units remain.
CorpusTable build_matrix(std::span<const Unit> units);

struct CorpusStats {
  std::size_t n_units = 0;
  std::size_t raw_word_tokens = 0;       // whitespace-separated, like `wc -w`
  std::size_t filtered_word_tokens = 0;  // tokens after normalization
  std::size_t n_unique = 0;
};

CorpusStats corpus_stats(std::span<const Unit> units);
CorpusStats corpus_stats(std::span<const Unit> units,
                         const ContingencyMatrix& matrix,
                         const Vocabulary& vocab);

std::string to_json(const CorpusStats& stats, std::string_view label);

/// Label used for matrix rows: "<variant>:<seq>".
std::string unit_label(const Unit& unit);

struct Variant {
  std::string id;
  std::vector<Unit> units;
};

struct CorpusSource {
  std::string id;
  std::filesystem::path path;
};

/// Lists variants in a directory (every *.txt, id = file stem) or in a JSON
/// manifest {"variants": [{"id": ..., "path": ...}]} with paths relative to
/// the manifest. Result is sorted by id.
std::vector<CorpusSource> discover_corpus(const std::filesystem::path& where);

Variant load_variant(const CorpusSource& source, const SplitPolicy& policy);

}  // namespace nodal

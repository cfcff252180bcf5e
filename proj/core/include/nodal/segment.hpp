#pragma once

// Per-variant pipeline: table -> CA -> reduced embedding -> constrained
// dendrogram -> segments at several resolutions and ranked nodal points.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nodal/ca.hpp"
#include "nodal/chronoclust.hpp"
#include "nodal/corpus.hpp"

namespace nodal {

struct DimensionPolicy {
  enum class Kind { kFixed, kFull, kRelativeDrop };
  Kind kind = Kind::kFixed;
  std::size_t k = 2;
  // Search window for kRelativeDrop, 1-based inclusive candidate k values.
  std::size_t window_lo = 1;
  std::size_t window_hi = 0;  // 0 = up to R - 1

  static DimensionPolicy fixed(std::size_t k) { return {Kind::kFixed, k}; }
  static DimensionPolicy full() { return {Kind::kFull, 0}; }
  static DimensionPolicy relative_drop(std::size_t lo, std::size_t hi) {
    return {Kind::kRelativeDrop, 0, lo, hi};
  }
  /// Parses "<n>", "full" or "auto" (relative drop over the whole spectrum).
  static DimensionPolicy parse(const std::string& text);
  std::string describe() const;
};

struct DimensionChoice {
  std::size_t k = 0;
  std::vector<std::string> warnings;
};

/// `pct` is the descending inertia spectrum in percent. Fixed k larger than
/// the spectrum is clamped (with a warning). The relative-drop rule returns
/// the k in the window maximizing pct[k] / pct[k + 1] (earliest on ties).
DimensionChoice select_dimension(std::span<const double> pct,
                                 const DimensionPolicy& policy);

struct SegmentConfig {
  DimensionPolicy dimension = DimensionPolicy::fixed(2);
  // Empty = 2 .. min(10, n).
  std::vector<std::size_t> resolutions;
  CAOptions ca;
};

struct SegmentationReport {
  std::string variant_id;
  std::size_t n_units = 0;
  std::size_t k_used = 0;
  std::string dimension_policy;
  std::vector<double> inertia_percentages;
  std::map<std::size_t, std::vector<Range>> segments_by_resolution;
  std::vector<Boundary> nodal_points;  // descending salience
  Dendrogram dendrogram;
  std::vector<int> source_numbers;  // per position; 0 when not recorded
  std::vector<std::string> warnings;
};

/// Errors from any stage are rethrown as nodal::Error with the variant id
/// prefixed to the message.
SegmentationReport segment_variant(std::span<const Unit> units,
                                   const SegmentConfig& config = {});

/// Variant of segment_variant that clusters a precomputed CA (useful when
/// comparing several dimensionalities of one analysis).
SegmentationReport segment_from_ca(const CAResult& ca, std::string variant_id,
                                   const SegmentConfig& config);

std::string to_json(const SegmentationReport& report);

/// Stanza text with break lines inserted at the boundaries of resolution m.
std::string render_annotated(const SegmentationReport& report,
                             std::span<const Unit> units, std::size_t m);

/// "1-8 | 9-23 | 24-26 | 27"
std::string format_ranges(const std::vector<Range>& ranges);

}  // namespace nodal

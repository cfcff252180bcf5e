#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "nodal/corpus.hpp"
#include "nodal/segment.hpp"

namespace nodal::cli {

struct RunConfig {
  std::filesystem::path corpus;  // directory of *.txt or JSON manifest
  SplitPolicy split;
  DimensionPolicy dimension = DimensionPolicy::fixed(2);
  std::vector<std::size_t> resolutions;  // empty = 2..min(10, n)
  std::vector<std::string> variants;     // empty = every variant
  std::filesystem::path out_dir = ".";
  std::set<std::string> formats;
  std::size_t ascii_width = 60;
  std::size_t annotate_m = 4;
};

/// "json,dot" -> {"json", "dot"}; rejects unknown names.
std::set<std::string> parse_formats(const std::string& text);
/// "2,4,6-8" -> {2, 4, 6, 7, 8}
std::vector<std::size_t> parse_resolutions(const std::string& text);

// Each command returns the process exit code. Human-readable output goes to
// `out`, diagnostics to `err`.
int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_segment(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Drops the longest prefix common to all ids ("65A", "65B" -> "A", "B").
std::vector<std::string> short_labels(const std::vector<std::string>& ids);

}  // namespace nodal::cli

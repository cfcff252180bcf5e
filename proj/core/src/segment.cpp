#include "nodal/segment.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "json.hpp"
#include "nodal/error.hpp"

namespace nodal {

DimensionPolicy DimensionPolicy::parse(const std::string& text) {
  if (text == "full") return full();
  if (text == "auto") return relative_drop(1, 0);
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc{} || ptr != text.data() + text.size() || k == 0)
    throw Error(ErrorCode::kInvalidArgument,
                "dimension must be a positive integer, 'full' or 'auto', got '" +
                    text + "'");
  return fixed(k);
}

std::string DimensionPolicy::describe() const {
  switch (kind) {
    case Kind::kFixed: return "fixed(" + std::to_string(k) + ")";
    case Kind::kFull: return "full";
    case Kind::kRelativeDrop:
      return "relative-drop[" + std::to_string(window_lo) + "," +
             (window_hi ? std::to_string(window_hi) : std::string("R-1")) + "]";
  }
  return "?";
}

DimensionChoice select_dimension(std::span<const double> pct,
                                 const DimensionPolicy& policy) {
  if (pct.empty())
    throw Error(ErrorCode::kZeroInertia, "empty inertia spectrum");
  const std::size_t available = pct.size();
  DimensionChoice choice;
  switch (policy.kind) {
    case DimensionPolicy::Kind::kFull:
      choice.k = available;
      break;
    case DimensionPolicy::Kind::kFixed:
      choice.k = policy.k;
      if (choice.k == 0)
        throw Error(ErrorCode::kOutOfRange, "dimension must be at least 1");
      if (choice.k > available) {
        choice.warnings.push_back("requested k=" + std::to_string(policy.k) +
                                  " but only " + std::to_string(available) +
                                  " axes exist; using " +
                                  std::to_string(available));
        choice.k = available;
      }
      break;
    case DimensionPolicy::Kind::kRelativeDrop: {
      if (available < 2) {
        choice.warnings.push_back("single-axis spectrum; relative drop undefined");
        choice.k = available;
        break;
      }
      const std::size_t lo = std::max<std::size_t>(policy.window_lo, 1);
      std::size_t hi = policy.window_hi ? policy.window_hi : available - 1;
      if (hi > available - 1) {
        choice.warnings.push_back("relative-drop window clamped to " +
                                  std::to_string(available - 1));
        hi = available - 1;
      }
      if (lo > hi)
        throw Error(ErrorCode::kOutOfRange,
                    "relative-drop window is empty for this spectrum");
      double best = -1.0;
      for (std::size_t k = lo; k <= hi; ++k) {
        const double ratio = pct[k - 1] / pct[k];
        if (ratio > best) {
          best = ratio;
          choice.k = k;
        }
      }
      break;
    }
  }
  return choice;
}

namespace {

std::vector<std::size_t> resolutions_for(const SegmentConfig& config,
                                         std::size_t n) {
  std::vector<std::size_t> res = config.resolutions;
  if (res.empty()) {
    for (std::size_t m = 2; m <= std::min<std::size_t>(10, n); ++m)
      res.push_back(m);
  }
  for (std::size_t m : res)
    if (m < 1 || m > n)
      throw Error(ErrorCode::kOutOfRange,
                  "resolution " + std::to_string(m) + " outside [1, " +
                      std::to_string(n) + "]");
  std::sort(res.begin(), res.end());
  res.erase(std::unique(res.begin(), res.end()), res.end());
  return res;
}

}  // namespace

SegmentationReport segment_from_ca(const CAResult& ca, std::string variant_id,
                                   const SegmentConfig& config) {
  SegmentationReport report;
  report.variant_id = std::move(variant_id);
  report.n_units = ca.row_coords.rows();
  report.dimension_policy = config.dimension.describe();
  report.inertia_percentages = inertia_percentages(ca);

  DimensionChoice choice =
      select_dimension(report.inertia_percentages, config.dimension);
  report.k_used = choice.k;
  report.warnings = std::move(choice.warnings);

  report.dendrogram = cluster(project_rows(ca, report.k_used));
  for (std::size_t m : resolutions_for(config, report.n_units))
    report.segments_by_resolution[m] = cut(report.dendrogram, m);
  report.nodal_points = rank_boundaries(report.dendrogram);
  return report;
}

SegmentationReport segment_variant(std::span<const Unit> units,
                                   const SegmentConfig& config) {
  const std::string id = units.empty() ? std::string() : units.front().variant_id;
  try {
    CorpusTable table = build_matrix(units);
    CAResult ca = analyze(table.matrix, config.ca);
    SegmentationReport report = segment_from_ca(ca, id, config);
    for (const Unit& u : units)
      if (!u.tokens.empty()) report.source_numbers.push_back(u.source_number.value_or(0));
    return report;
  } catch (const Error& e) {
    throw Error(e.code(), "variant '" + id + "': " + e.what());
  }
}

std::string format_ranges(const std::vector<Range>& ranges) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (i) out << " | ";
    out << ranges[i].first;
    if (ranges[i].last != ranges[i].first) out << "-" << ranges[i].last;
  }
  return out.str();
}

std::string to_json(const SegmentationReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema_version"] = 1;
  j["variant_id"] = report.variant_id;
  j["n_units"] = report.n_units;
  j["k_used"] = report.k_used;
  j["dimension_policy"] = report.dimension_policy;
  j["inertia_percentages"] = report.inertia_percentages;
  json segs = json::object();
  for (const auto& [m, ranges] : report.segments_by_resolution) {
    json arr = json::array();
    for (const Range& r : ranges) arr.push_back({r.first, r.last});
    segs[std::to_string(m)] = std::move(arr);
  }
  j["segments_by_resolution"] = std::move(segs);
  json nodal = json::array();
  for (std::size_t rank = 0; rank < report.nodal_points.size(); ++rank) {
    const Boundary& b = report.nodal_points[rank];
    nodal.push_back({{"rank", rank + 1},
                     {"after", b.after},
                     {"before", b.after + 1},
                     {"height", b.height}});
  }
  j["nodal_points"] = std::move(nodal);
  j["dendrogram"] = json::parse(to_json(report.dendrogram));
  j["source_numbers"] = report.source_numbers;
  j["warnings"] = report.warnings;
  return j.dump(2);
}

std::string render_annotated(const SegmentationReport& report,
                             std::span<const Unit> units, std::size_t m) {
  const auto it = report.segments_by_resolution.find(m);
  const std::vector<Range> ranges =
      it != report.segments_by_resolution.end() ? it->second
                                                : cut(report.dendrogram, m);
  std::vector<double> height_after(report.n_units + 1, 0.0);
  std::vector<std::size_t> rank_after(report.n_units + 1, 0);
  for (std::size_t r = 0; r < report.nodal_points.size(); ++r) {
    height_after[report.nodal_points[r].after] = report.nodal_points[r].height;
    rank_after[report.nodal_points[r].after] = r + 1;
  }

  std::vector<const Unit*> kept;
  for (const Unit& u : units)
    if (!u.tokens.empty()) kept.push_back(&u);

  std::ostringstream out;
  out.precision(4);
  for (std::size_t s = 0; s < ranges.size(); ++s) {
    if (s) {
      const std::size_t after = ranges[s - 1].last;
      out << "\n==== nodal point " << after << "|" << after + 1 << "  rank "
          << rank_after[after] << "  height " << height_after[after]
          << " ====\n";
    }
    for (std::size_t pos = ranges[s].first; pos <= ranges[s].last; ++pos) {
      out << "\n[" << pos << "]\n";
      if (pos <= kept.size()) out << kept[pos - 1]->raw << "\n";
    }
  }
  return out.str();
}

}  // namespace nodal

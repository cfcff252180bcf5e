#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nodal/compare.hpp"
#include "nodal/error.hpp"
#include "nodal/render.hpp"

namespace nodal::cli {

namespace {

namespace fs = std::filesystem;

const std::set<std::string> kKnownFormats = {"json", "dot", "svg", "ascii", "text"};

struct LoadedCorpus {
  std::vector<Variant> variants;
  std::vector<std::string> failures;
};

LoadedCorpus load_corpus(const RunConfig& config, std::ostream& err) {
  LoadedCorpus loaded;
  std::vector<CorpusSource> sources;
  try {
    sources = discover_corpus(config.corpus);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    loaded.failures.push_back(config.corpus.string());
  }
  for (const CorpusSource& source : sources) {
    try {
      loaded.variants.push_back(load_variant(source, config.split));
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      loaded.failures.push_back(source.id);
    }
  }
  return loaded;
}

bool write_file(const fs::path& path, const std::string& content, std::ostream& err) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream file(path, std::ios::binary);
  if (file) file << content;
  if (!file) {
    err << "error: cannot write '" << path.string() << "'\n";
    return false;
  }
  return true;
}

std::vector<std::string> seq_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

std::string known_ids(const std::vector<Variant>& variants) {
  std::string ids;
  for (const Variant& v : variants) ids += (ids.empty() ? "" : ", ") + v.id;
  return ids;
}

void print_stats_row(std::ostream& out, const std::string& id, const CorpusStats& s) {
  out << std::left << std::setw(10) << id << std::right << std::setw(9) << s.n_units
      << std::setw(13) << s.raw_word_tokens << std::setw(16)
      << s.filtered_word_tokens << std::setw(14) << s.n_unique << "\n";
}

}  // namespace

std::set<std::string> parse_formats(const std::string& text) {
  std::set<std::string> formats;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (!kKnownFormats.contains(item))
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown format '" + item + "' (json, dot, svg, ascii, text)");
    formats.insert(item);
  }
  return formats;
}

std::vector<std::size_t> parse_resolutions(const std::string& text) {
  const auto to_num = [&](std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0)
      throw Error(ErrorCode::kInvalidArgument, "bad resolution list '" + text + "'");
    return v;
  };
  std::vector<std::size_t> res;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      res.push_back(to_num(item));
      continue;
    }
    const std::size_t lo = to_num(std::string_view(item).substr(0, dash));
    const std::size_t hi = to_num(std::string_view(item).substr(dash + 1));
    if (lo > hi)
      throw Error(ErrorCode::kInvalidArgument, "bad resolution range '" + item + "'");
    for (std::size_t m = lo; m <= hi; ++m) res.push_back(m);
  }
  std::sort(res.begin(), res.end());
  res.erase(std::unique(res.begin(), res.end()), res.end());
  return res;
}

std::vector<std::string> short_labels(const std::vector<std::string>& ids) {
  if (ids.size() < 2) return ids;
  std::size_t common = ids[0].size();
  for (const std::string& id : ids) {
    std::size_t k = 0;
    while (k < common && k < id.size() && id[k] == ids[0][k]) ++k;
    common = k;
  }
  std::vector<std::string> out;
  for (const std::string& id : ids) {
    // Keep at least one character of every id.
    const std::size_t cut = std::min(common, id.empty() ? 0 : id.size() - 1);
    out.push_back(id.substr(cut));
  }
  return out;
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  LoadedCorpus corpus = load_corpus(config, err);
  std::vector<Unit> all;
  std::string json = "{\"schema_version\":1,\"variants\":[";
  out << std::left << std::setw(10) << "variant" << std::right << std::setw(9)
      << "stanzas" << std::setw(13) << "total_words" << std::setw(16)
      << "filtered_words" << std::setw(14) << "unique_words" << "\n";
  for (std::size_t i = 0; i < corpus.variants.size(); ++i) {
    const Variant& v = corpus.variants[i];
    const CorpusStats s = corpus_stats(v.units);
    print_stats_row(out, v.id, s);
    json += (i ? "," : "") + to_json(s, v.id);
    all.insert(all.end(), v.units.begin(), v.units.end());
  }
  if (!all.empty()) {
    const CorpusStats pooled = corpus_stats(all);
    print_stats_row(out, "all", pooled);
    json += "],\"all\":" + to_json(pooled, "all") + "}\n";
  } else {
    json += "],\"all\":null}\n";
  }
  bool ok = corpus.failures.empty() && !corpus.variants.empty();
  if (config.formats.contains("json"))
    ok = write_file(config.out_dir / "stats.json", json, err) && ok;
  return ok ? 0 : 1;
}

int cmd_segment(const RunConfig& config, std::ostream& out, std::ostream& err) {
  LoadedCorpus corpus = load_corpus(config, err);
  bool ok = corpus.failures.empty();

  std::vector<const Variant*> chosen;
  if (config.variants.empty()) {
    for (const Variant& v : corpus.variants) chosen.push_back(&v);
  } else {
    for (const std::string& id : config.variants) {
      auto it = std::find_if(corpus.variants.begin(), corpus.variants.end(),
                             [&](const Variant& v) { return v.id == id; });
      if (it == corpus.variants.end()) {
        err << "error: unknown variant '" << id << "' (known: "
            << known_ids(corpus.variants) << ")\n";
        ok = false;
      } else {
        chosen.push_back(&*it);
      }
    }
  }
  if (chosen.empty()) return 1;

  SegmentConfig seg;
  seg.dimension = config.dimension;
  seg.resolutions = config.resolutions;

  for (const Variant* v : chosen) {
    SegmentationReport report;
    try {
      report = segment_variant(v->units, seg);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      ok = false;
      continue;
    }
    const std::vector<std::string> labels = seq_labels(report.n_units);
    for (const std::string& w : report.warnings)
      err << "warning: " << v->id << ": " << w << "\n";

    if (config.formats.contains("ascii")) {
      out << "== " << v->id << "  (" << report.n_units << " units, k=" << report.k_used
          << ", " << report.dimension_policy << ")\n";
      out << "inertia %:";
      for (std::size_t k = 0; k < std::min<std::size_t>(5, report.inertia_percentages.size()); ++k)
        out << " " << std::fixed << std::setprecision(2) << report.inertia_percentages[k];
      out.unsetf(std::ios::floatfield);
      out << (report.inertia_percentages.size() > 5 ? " ..." : "") << "\n\n";
      out << render_ascii(report.dendrogram, config.ascii_width, labels) << "\n";
      out << "segments:\n";
      for (const auto& [m, ranges] : report.segments_by_resolution)
        out << "  m=" << m << ": " << format_ranges(ranges) << "\n";
      out << "nodal points:\n";
      for (std::size_t r = 0; r < std::min<std::size_t>(10, report.nodal_points.size()); ++r) {
        const Boundary& b = report.nodal_points[r];
        out << "  " << r + 1 << ". " << b.after << "|" << b.after + 1 << "  height "
            << std::setprecision(6) << b.height << "\n";
      }
      out << "\n";
    }

    const fs::path base = config.out_dir / v->id;
    if (config.formats.contains("json"))
      ok = write_file(base.string() + ".segment.json", to_json(report), err) && ok;
    if (config.formats.contains("dot"))
      ok = write_file(base.string() + ".dendrogram.dot",
                      to_dot(report.dendrogram, labels), err) && ok;
    if (config.formats.contains("svg"))
      ok = write_file(base.string() + ".dendrogram.svg",
                      render_dendrogram_svg(report.dendrogram, v->id, labels), err) &&
           ok;
    if (config.formats.contains("text")) {
      const std::size_t m = std::clamp<std::size_t>(config.annotate_m, 1, report.n_units);
      ok = write_file(base.string() + ".annotated.txt",
                      render_annotated(report, v->units, m), err) && ok;
    }
  }
  return ok ? 0 : 1;
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  LoadedCorpus corpus = load_corpus(config, err);
  bool ok = corpus.failures.empty();
  if (corpus.variants.size() < 2) {
    err << "error: compare needs at least 2 variants, found "
        << corpus.variants.size() << "\n";
    return 1;
  }

  std::vector<std::string> ids;
  for (const Variant& v : corpus.variants) ids.push_back(v.id);
  const std::vector<std::string> letters = short_labels(ids);

  try {
    const VariantSet set(std::move(corpus.variants));
    const CAResult& ca = pooled_analysis(set);
    const auto openings = endpoint_map(set, Endpoint::kOpening);
    const auto closings = endpoint_map(set, Endpoint::kClosing);
    const std::vector<NamedAverage> averages = {
        {"openings", average_profile_projection(set, select_opening())},
        {"closings", average_profile_projection(set, select_closing())},
    };

    out << "pooled: " << set.pooled_matrix().rows() << " units x "
        << set.pooled_matrix().cols() << " words, rank " << ca.rank() << "\n";
    if (ca.rank() >= 2) {
      const auto pct = inertia_percentages(ca);
      out << "factor 1: " << std::fixed << std::setprecision(2) << pct[0]
          << "%  factor 2: " << pct[1] << "%\n";
      out.unsetf(std::ios::floatfield);
    }
    for (const auto& [name, entries] :
         {std::pair{"openings", &openings}, std::pair{"closings", &closings}}) {
      out << name << " by distance to origin (full space / plane):\n";
      std::size_t r = 1;
      for (std::size_t i : rank_by_full_distance(*entries)) {
        const EndpointEntry& e = (*entries)[i];
        out << "  " << r++ << ". " << std::left << std::setw(8) << e.variant_id
            << std::right << " stanza " << std::setw(3) << e.seq << "  "
            << std::fixed << std::setprecision(4) << e.full_distance << " / "
            << e.plane_distance << "\n";
        out.unsetf(std::ios::floatfield);
      }
    }

    if (config.formats.contains("json"))
      ok = write_file(config.out_dir / "compare.json",
                      to_json(set, openings, closings, averages), err) && ok;
    if (config.formats.contains("svg") && ca.rank() >= 2) {
      std::vector<ScatterPoint> base;
      for (std::size_t i = 0; i < ca.row_coords.rows(); ++i)
        base.push_back({ca.row_coords(i, 0), ca.row_coords(i, 1), "", false});
      const auto with_endpoints = [&](const std::vector<EndpointEntry>& entries) {
        std::vector<ScatterPoint> pts = base;
        for (std::size_t v = 0; v < entries.size(); ++v)
          pts.push_back({entries[v].plane[0], entries[v].plane[1], letters[v], true});
        return pts;
      };
      const std::string all_dots = " (all " + std::to_string(base.size()) + " units as dots)";
      ok = write_file(config.out_dir / "pooled.svg",
                      render_scatter_svg(base, "Pooled principal plane" + all_dots), err) &&
           ok;
      ok = write_file(config.out_dir / "openings.svg",
                      render_scatter_svg(with_endpoints(openings), "Opening units" + all_dots),
                      err) &&
           ok;
      ok = write_file(config.out_dir / "closings.svg",
                      render_scatter_svg(with_endpoints(closings), "Closing units" + all_dots),
                      err) &&
           ok;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return ok ? 0 : 1;
}

}  // namespace nodal::cli

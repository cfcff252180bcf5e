// nodal: segment ordered narrative text and find its nodal points.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "nodal/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Segmentation and nodal points of ordered narrative text"};
  app.require_subcommand(1);

  std::string corpus;
  std::string delimiter = "blank-line";
  std::size_t min_tokens = 1;
  std::string k = "2";
  std::string resolutions;
  std::string out_dir = ".";
  std::string stats_formats = "ascii";
  std::string segment_formats = "ascii";
  std::string compare_formats = "json,svg";
  std::vector<std::string> variants;
  std::vector<std::string> positional;
  std::size_t width = 60;
  std::size_t annotate = 4;

  const auto common = [&](CLI::App* cmd, std::string& formats) {
    cmd->add_option("--corpus", corpus, "Corpus directory (*.txt) or JSON manifest")
        ->required();
    cmd->add_option("--delimiter", delimiter,
                    "Unit delimiter: blank-line | marker:STR | lines:N")
        ->capture_default_str();
    cmd->add_option("--min-tokens", min_tokens,
                    "Drop units with fewer tokens than this")
        ->capture_default_str();
    cmd->add_option("--out", out_dir, "Output directory for files")
        ->capture_default_str();
    cmd->add_option("--format", formats, "Comma list of json,dot,svg,ascii,text")
        ->capture_default_str();
  };

  CLI::App* stats = app.add_subcommand("stats", "Per-variant unit and word counts");
  common(stats, stats_formats);

  CLI::App* segment = app.add_subcommand("segment", "Segment variants and rank nodal points");
  common(segment, segment_formats);
  segment->add_option("ids", positional, "Variant id(s); default all");
  segment->add_option("--variant", variants, "Variant id (repeatable)");
  segment->add_option("--k", k, "Embedding dimension: <n> | full | auto")
      ->capture_default_str();
  segment->add_option("--resolutions", resolutions,
                      "Cluster counts to report, e.g. 2-10 or 2,4,8");
  segment->add_option("--width", width, "ASCII dendrogram width")->capture_default_str();
  segment->add_option("--annotate", annotate,
                      "Resolution used by the 'text' (annotated) format")
      ->capture_default_str();

  CLI::App* compare = app.add_subcommand("compare", "Pooled comparison of all variants");
  common(compare, compare_formats);

  CLI11_PARSE(app, argc, argv);

  try {
    nodal::cli::RunConfig config;
    config.corpus = corpus;
    config.split = nodal::SplitPolicy::parse(delimiter);
    config.split.min_tokens = min_tokens;
    config.dimension = nodal::DimensionPolicy::parse(k);
    if (!resolutions.empty())
      config.resolutions = nodal::cli::parse_resolutions(resolutions);
    config.variants = positional;
    config.variants.insert(config.variants.end(), variants.begin(), variants.end());
    config.out_dir = out_dir;
    config.formats = nodal::cli::parse_formats(
        stats->parsed() ? stats_formats
                        : segment->parsed() ? segment_formats : compare_formats);
    config.ascii_width = width;
    config.annotate_m = annotate;

    if (stats->parsed()) return nodal::cli::cmd_stats(config, std::cout, std::cerr);
    if (segment->parsed()) return nodal::cli::cmd_segment(config, std::cout, std::cerr);
    if (compare->parsed()) return nodal::cli::cmd_compare(config, std::cout, std::cerr);
  } catch (const nodal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

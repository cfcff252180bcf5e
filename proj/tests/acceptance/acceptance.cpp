// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
//
// The ballad corpus is read from $NODAL_CORPUS (a directory of *.txt files
// or a JSON manifest) or, failing that, from the bundled data directory.
// $NODAL_CORPUS_SPLIT overrides the stanza delimiter (default blank-line).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "nodal/ca.hpp"
#include "nodal/chronoclust.hpp"
#include "nodal/compare.hpp"
#include "nodal/corpus.hpp"
#include "nodal/error.hpp"
#include "nodal/linalg.hpp"
#include "nodal/segment.hpp"
#include "oracles.hpp"

#ifndef NODAL_DEFAULT_CORPUS
#define NODAL_DEFAULT_CORPUS "data/child65"
#endif

namespace fs = std::filesystem;
using namespace nodal;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int number, const std::string& name, const Outcome& o) {
  std::printf("%s  %d. %s: %s\n", o.pass ? "PASS" : "FAIL", number, name.c_str(),
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

// ---------------------------------------------------------------- corpus

struct Corpus {
  std::vector<Variant> variants;
  std::string error;
  double load_seconds = 0.0;

  const Variant* find(char letter) const {
    for (const Variant& v : variants)
      if (!v.id.empty() && v.id.back() == letter) return &v;
    return nullptr;
  }
};

fs::path corpus_location() {
  if (const char* env = std::getenv("NODAL_CORPUS"); env && *env) return env;
  const fs::path dir = NODAL_DEFAULT_CORPUS;
  if (fs::is_regular_file(dir / "corpus.json")) return dir / "corpus.json";
  return dir;
}

Corpus load_corpus() {
  Corpus corpus;
  const auto t0 = Clock::now();
  const fs::path where = corpus_location();
  if (!fs::exists(where)) {
    corpus.error = "corpus not found at '" + where.string() + "'";
    return corpus;
  }
  std::vector<CorpusSource> sources;
  try {
    sources = discover_corpus(where);
  } catch (const Error& e) {
    corpus.error = "corpus not found: " + std::string(e.what());
    return corpus;
  }
  try {
    SplitPolicy policy;
    if (const char* split = std::getenv("NODAL_CORPUS_SPLIT"); split && *split)
      policy = SplitPolicy::parse(split);
    for (const CorpusSource& source : sources)
      corpus.variants.push_back(load_variant(source, policy));
  } catch (const Error& e) {
    corpus.variants.clear();
    corpus.error = e.what();
  }
  corpus.load_seconds = seconds_since(t0);
  return corpus;
}

const Variant* require_65b(const Corpus& corpus, Outcome& o) {
  if (!corpus.error.empty()) {
    o.detail = corpus.error;
    return nullptr;
  }
  const Variant* v = corpus.find('B');
  if (!v) o.detail = "variant 65B missing from corpus";
  return v;
}

// ------------------------------------------------------------ criteria 1-5

Outcome table_reproduction(const Corpus& corpus) {
  Outcome o;
  if (!corpus.error.empty()) {
    o.detail = corpus.error;
    return o;
  }
  const auto t0 = Clock::now();
  const std::string letters = "ABCDEFGHI";
  const std::vector<std::size_t> stanzas{31, 27, 22, 24, 21, 21, 15, 39, 19};
  const std::vector<double> unique{288, 210, 217, 232, 210, 197, 166, 312, 196};
  if (corpus.variants.size() != letters.size()) {
    o.detail = "expected 9 variants, found " + std::to_string(corpus.variants.size());
    return o;
  }
  bool ok = true;
  std::ostringstream bad;
  std::vector<Unit> pooled;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const Variant* v = corpus.find(letters[i]);
    if (!v) {
      bad << " missing " << letters[i] << ";";
      ok = false;
      continue;
    }
    const CorpusStats s = corpus_stats(v->units);
    const double rel = std::abs(static_cast<double>(s.n_unique) - unique[i]) / unique[i];
    if (s.n_units != stanzas[i] || rel > 0.03) {
      ok = false;
      bad << " " << v->id << " " << s.n_units << "/" << s.n_unique << ";";
    }
    pooled.insert(pooled.end(), v->units.begin(), v->units.end());
  }
  const CorpusStats all = corpus_stats(pooled);
  const double rel_all = std::abs(static_cast<double>(all.n_unique) - 837.0) / 837.0;
  if (all.n_units != 219 || rel_all > 0.03) {
    ok = false;
    bad << " pooled " << all.n_units << "/" << all.n_unique << ";";
  }
  const double elapsed = corpus.load_seconds + seconds_since(t0);
  if (elapsed >= 1.0) {
    ok = false;
    bad << " runtime " << fmt(elapsed, 3) << " s;";
  }
  o.pass = ok;
  o.detail = ok ? "pooled " + std::to_string(all.n_units) + " stanzas, " +
                      std::to_string(all.n_unique) + " unique words, " +
                      fmt(elapsed, 3) + " s"
                : "mismatch:" + bad.str();
  return o;
}

Outcome inertia_of_65b(const Corpus& corpus) {
  Outcome o;
  const Variant* v = require_65b(corpus, o);
  if (!v) return o;
  const auto t0 = Clock::now();
  try {
    const CAResult ca = analyze(build_matrix(v->units).matrix);
    const auto pct = inertia_percentages(ca);
    const double elapsed = seconds_since(t0);
    const double f1 = pct.size() > 0 ? pct[0] : 0.0;
    const double f2 = pct.size() > 1 ? pct[1] : 0.0;
    o.pass = std::abs(f1 - 5.7) <= 0.5 && std::abs(f2 - 5.4) <= 0.5 && ca.rank() <= 26 &&
             elapsed < 1.0;
    o.detail = "factor 1 " + fmt(f1) + "%, factor 2 " + fmt(f2) + "%, rank " +
               std::to_string(ca.rank()) + ", " + fmt(elapsed, 3) + " s";
  } catch (const Error& e) {
    o.detail = e.what();
  }
  return o;
}

std::vector<std::size_t> cut_points(const std::vector<Range>& ranges) {
  std::vector<std::size_t> cuts;
  for (std::size_t r = 0; r + 1 < ranges.size(); ++r) cuts.push_back(ranges[r].last);
  return cuts;
}

std::vector<std::size_t> top_boundaries(const SegmentationReport& report, std::size_t count) {
  std::vector<std::size_t> top;
  for (std::size_t r = 0; r < std::min(count, report.nodal_points.size()); ++r)
    top.push_back(report.nodal_points[r].after);
  return top;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

Outcome segmentation_of_65b(const Corpus& corpus) {
  Outcome o;
  const Variant* v = require_65b(corpus, o);
  if (!v) return o;
  try {
    SegmentConfig config;
    config.dimension = DimensionPolicy::fixed(2);
    config.resolutions = {4};
    const SegmentationReport report = segment_variant(v->units, config);
    const auto& ranges = report.segments_by_resolution.at(4);
    const std::vector<Range> expected{{1, 8}, {9, 23}, {24, 26}, {27, 27}};
    const auto cuts = cut_points(ranges);
    const std::vector<std::size_t> want{8, 23, 26};
    bool near = cuts.size() == want.size();
    for (std::size_t i = 0; near && i < want.size(); ++i)
      near = (cuts[i] > want[i] ? cuts[i] - want[i] : want[i] - cuts[i]) <= 1;
    const auto top2 = top_boundaries(report, 2);
    const bool top_26 = std::find(top2.begin(), top2.end(), 26) != top2.end();
    const bool exact = ranges == expected;
    o.pass = exact || (near && top_26);
    o.detail = "4-cut " + format_ranges(ranges) + (exact ? " (exact)" : "") +
               ", top-2 nodal points " + join(top2);
  } catch (const Error& e) {
    o.detail = e.what();
  }
  return o;
}

// At most one element of `b` may differ from `a`, and only by one stanza.
bool same_up_to_one_shift(std::vector<std::size_t> a, std::vector<std::size_t> b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> ra, rb;
  for (std::size_t x : a) {
    auto it = std::find(b.begin(), b.end(), x);
    if (it != b.end())
      b.erase(it);
    else
      ra.push_back(x);
  }
  rb = b;
  if (ra.empty()) return true;
  if (ra.size() != 1) return false;
  const std::size_t d = ra[0] > rb[0] ? ra[0] - rb[0] : rb[0] - ra[0];
  return d <= 1;
}

Outcome robustness_of_65b(const Corpus& corpus) {
  Outcome o;
  const Variant* v = require_65b(corpus, o);
  if (!v) return o;
  try {
    const CAResult ca = analyze(build_matrix(v->units).matrix);
    std::map<std::string, std::vector<std::size_t>> tops;
    for (const auto& [name, policy] :
         {std::pair{std::string("k=2"), DimensionPolicy::fixed(2)},
          std::pair{std::string("k=15"), DimensionPolicy::fixed(15)},
          std::pair{std::string("full"), DimensionPolicy::full()}}) {
      SegmentConfig config;
      config.dimension = policy;
      config.resolutions = {2};
      tops[name] = top_boundaries(segment_from_ca(ca, v->id, config), 3);
    }
    o.pass = same_up_to_one_shift(tops["k=2"], tops["k=15"]) &&
             same_up_to_one_shift(tops["k=2"], tops["full"]) &&
             same_up_to_one_shift(tops["k=15"], tops["full"]);
    o.detail = "top-3 k=2 {" + join(tops["k=2"]) + "}, k=15 {" + join(tops["k=15"]) +
               "}, full {" + join(tops["full"]) + "}";
  } catch (const Error& e) {
    o.detail = e.what();
  }
  return o;
}

std::string top_ids(const std::vector<EndpointEntry>& entries, std::size_t count) {
  std::string s;
  const auto order = rank_by_full_distance(entries);
  for (std::size_t r = 0; r < std::min(count, order.size()); ++r)
    s += (s.empty() ? "" : ",") + entries[order[r]].variant_id;
  return s;
}

Outcome endpoint_claims(const Corpus& corpus) {
  Outcome o;
  if (!corpus.error.empty()) {
    o.detail = corpus.error;
    return o;
  }
  try {
    const VariantSet set(corpus.variants);
    const auto closings = endpoint_map(set, Endpoint::kClosing);
    const auto openings = endpoint_map(set, Endpoint::kOpening);
    const auto close_order = rank_by_full_distance(closings);
    const auto open_order = rank_by_full_distance(openings);
    const auto letter = [](const EndpointEntry& e) { return e.variant_id.back(); };
    std::string top2{letter(closings[close_order[0]]), letter(closings[close_order[1]])};
    std::sort(top2.begin(), top2.end());
    o.pass = top2 == "BG" && letter(openings[open_order[0]]) == 'H';
    o.detail = "closings top-2 " + top_ids(closings, 2) + ", openings top-1 " +
               top_ids(openings, 1);
  } catch (const Error& e) {
    o.detail = e.what();
  }
  return o;
}

// --------------------------------------------------------------- criterion 6

struct Check {
  std::string name;
  int failed = 0;
  int total = 0;
  void expect(bool ok) {
    ++total;
    if (!ok) ++failed;
  }
};

Check no_inversion() {
  Check c{"no-inversion"};
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> n_dist(2, 50), d_dist(1, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto pts = oracle::random_points(rng, n_dist(rng), d_dist(rng));
    const auto h = cluster(testing_support::to_matrix(pts)).heights();
    c.expect(std::is_sorted(h.begin(), h.end()));
  }
  return c;
}

Check oracle_equivalence() {
  Check c{"oracle equivalence"};
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::size_t> n_dist(2, 8), d_dist(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = oracle::random_points(rng, n_dist(rng), d_dist(rng));
    const auto expected = oracle::naive_constrained_complete(pts);
    const auto merges = cluster(testing_support::to_matrix(pts)).merges();
    bool same = merges.size() == expected.size();
    for (std::size_t k = 0; same && k < merges.size(); ++k) {
      const auto& e = expected[k];
      same = merges[k].left == Range{e.left_first, e.left_last} &&
             merges[k].right == Range{e.right_first, e.right_last} &&
             std::abs(merges[k].height - e.height) <= 1e-12 * std::max(1.0, e.height);
    }
    c.expect(same);
  }
  return c;
}

Check ca_identities() {
  Check c{"CA identities"};
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> dim(2, 25);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    const auto t = oracle::random_table(rng, rows, cols);
    const ContingencyMatrix m = testing_support::to_table(t);
    const CAResult ca = analyze(m);
    const std::size_t r = ca.rank();
    bool ok = true;

    const double chi = oracle::chi2_over_n(t);
    ok = ok && std::abs(ca.total_inertia - chi) <= 1e-9 * chi;

    for (std::size_t k = 0; k < r; ++k) {
      double rm = 0.0, cm = 0.0;
      for (std::size_t i = 0; i < rows; ++i) rm += ca.row_masses[i] * ca.row_coords(i, k);
      for (std::size_t j = 0; j < cols; ++j) cm += ca.col_masses[j] * ca.col_coords(j, k);
      ok = ok && std::abs(rm) <= 1e-9 && std::abs(cm) <= 1e-9;
    }

    const double n = static_cast<double>(m.grand_total());
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j)
          acc += static_cast<double>(t[i][j]) / (n * ca.row_masses[i]) * ca.col_coords(j, k);
        ok = ok && std::abs(acc / ca.singular_values[k] - ca.row_coords(i, k)) <= 1e-8;
      }

    const SupplementaryPoint origin = project_supplementary(ca, ca.col_masses);
    for (double x : origin.coords) ok = ok && std::abs(x) <= 1e-9;

    const auto colm = oracle::col_masses(t);
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = a + 1; b < rows; ++b) {
        const double want =
            oracle::chi2_distance(oracle::profile(t, a), oracle::profile(t, b), colm);
        ok = ok && std::abs(euclidean(ca.row_coords.row(a), ca.row_coords.row(b)) - want) <= 1e-8;
      }
    c.expect(ok);
  }
  return c;
}

Check svd_tolerances() {
  Check c{"SVD"};
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> dim(1, 60);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix a = testing_support::to_matrix(oracle::random_points(rng, dim(rng), dim(rng)));
    const Svd d = svd(a);
    double orth = 0.0;
    for (const Matrix* q : {&d.u, &d.v})
      for (std::size_t x = 0; x < q->cols(); ++x)
        for (std::size_t y = x; y < q->cols(); ++y) {
          double s = 0.0;
          for (std::size_t i = 0; i < q->rows(); ++i) s += (*q)(i, x) * (*q)(i, y);
          orth = std::max(orth, std::abs(s - (x == y ? 1.0 : 0.0)));
        }
    double err = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < d.sigma.size(); ++k) s += d.u(i, k) * d.sigma[k] * d.v(j, k);
        err += (a(i, j) - s) * (a(i, j) - s);
      }
    c.expect(orth <= 1e-9 && std::sqrt(err) <= 1e-10 * frobenius_norm(a) &&
             std::is_sorted(d.sigma.rbegin(), d.sigma.rend()));
  }
  return c;
}

Outcome property_suite() {
  const auto t0 = Clock::now();
  Outcome o;
  o.pass = true;
  for (const auto& run : {no_inversion, oracle_equivalence, ca_identities, svd_tolerances}) {
    Check c;
    try {
      c = run();
    } catch (const Error& e) {
      c.name = "exception";
      c.failed = 1;
      o.detail += std::string(e.what()) + "; ";
    }
    o.pass = o.pass && c.failed == 0;
    o.detail += c.name + " " + std::to_string(c.total - c.failed) + "/" +
                std::to_string(c.total) + "; ";
  }
  o.detail += fmt(seconds_since(t0), 2) + " s";
  return o;
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const Corpus corpus = load_corpus();
  report(1, "corpus statistics", table_reproduction(corpus));
  report(2, "65B inertia", inertia_of_65b(corpus));
  report(3, "65B 4-segment cut", segmentation_of_65b(corpus));
  report(4, "65B robustness to k", robustness_of_65b(corpus));
  report(5, "endpoint distances", endpoint_claims(corpus));
  report(6, "property suite", property_suite());
  std::printf("%d of 6 criteria failed, %.2f s total\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}

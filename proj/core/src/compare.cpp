#include "nodal/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "nodal/error.hpp"

namespace nodal {

namespace {

CorpusTable pool(const std::vector<Variant>& variants) {
  std::vector<Unit> all;
  for (const Variant& v : variants)
    for (const Unit& u : v.units) all.push_back(u);
  return build_matrix(all);
}

}  // namespace

VariantSet::VariantSet(std::vector<Variant> variants, const CAOptions& options)
    : variants_(std::move(variants)) {
  if (variants_.size() < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "pooled analysis needs at least 2 variants");
  std::size_t offset = 0;
  for (const Variant& v : variants_) {
    offsets_.push_back(offset);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < v.units.size(); ++i)
      if (!v.units[i].tokens.empty()) kept.push_back(i);
    if (kept.empty())
      throw Error(ErrorCode::kCorpusEmpty, "variant '" + v.id + "' has no units");
    offset += kept.size();
    kept_.push_back(std::move(kept));
  }
  table_ = pool(variants_);
  ca_ = analyze(table_.matrix, options);
}

std::size_t VariantSet::unit_count(std::size_t variant) const {
  return kept_.at(variant).size();
}

std::size_t VariantSet::row_of(std::size_t variant, std::size_t position) const {
  if (position >= unit_count(variant))
    throw Error(ErrorCode::kOutOfRange, "unit position out of range");
  return offsets_[variant] + position;
}

const Unit& VariantSet::unit(std::size_t variant, std::size_t position) const {
  return variants_.at(variant).units.at(kept_.at(variant).at(position));
}

const CAResult& pooled_analysis(const VariantSet& set) { return set.pooled_ca(); }

void require_same_analysis(const VariantSet& set, const std::string& id) {
  if (id != set.analysis_id())
    throw Error(ErrorCode::kInvalidArgument,
                "coordinates from analysis " + id +
                    " cannot be combined with analysis " + set.analysis_id());
}

std::vector<EndpointEntry> endpoint_map(const VariantSet& set, Endpoint which,
                                        std::size_t plane_dims) {
  const CAResult& ca = set.pooled_ca();
  const std::size_t dims = std::min(plane_dims, ca.rank());
  const std::vector<double> origin(ca.rank(), 0.0);
  std::vector<EndpointEntry> entries;
  for (std::size_t v = 0; v < set.variants().size(); ++v) {
    const std::size_t pos = which == Endpoint::kOpening ? 0 : set.unit_count(v) - 1;
    const auto row = ca.row_coords.row(set.row_of(v, pos));
    EndpointEntry e;
    e.analysis_id = ca.analysis_id;
    e.variant_id = set.variants()[v].id;
    e.seq = set.unit(v, pos).seq;
    e.plane.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(dims));
    e.plane_distance = euclidean(e.plane, std::span(origin).first(dims));
    e.full_distance = euclidean(row, origin);
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<std::size_t> rank_by_full_distance(std::span<const EndpointEntry> entries) {
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].full_distance > entries[b].full_distance;
  });
  return order;
}

UnitSelector select_opening() {
  return [](const Variant&, std::size_t n) {
    return n ? std::vector<std::size_t>{1} : std::vector<std::size_t>{};
  };
}

UnitSelector select_closing() {
  return [](const Variant&, std::size_t n) {
    return n ? std::vector<std::size_t>{n} : std::vector<std::size_t>{};
  };
}

UnitSelector select_all() {
  return [](const Variant&, std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 1);
    return all;
  };
}

AverageProjection average_profile_projection(const VariantSet& set,
                                             const UnitSelector& selector,
                                             ProfileWeighting weighting) {
  const CAResult& ca = set.pooled_ca();
  const ContingencyMatrix& table = set.pooled_matrix();
  AverageProjection out;
  out.analysis_id = ca.analysis_id;
  out.average_profile.assign(table.cols(), 0.0);

  double weight_total = 0.0;
  for (std::size_t v = 0; v < set.variants().size(); ++v) {
    const std::size_t n = set.unit_count(v);
    for (std::size_t pos : selector(set.variants()[v], n)) {
      if (pos < 1 || pos > n)
        throw Error(ErrorCode::kOutOfRange,
                    "selector picked position " + std::to_string(pos) +
                        " in variant '" + set.variants()[v].id + "'");
      const std::size_t row = set.row_of(v, pos - 1);
      const double w = weighting == ProfileWeighting::kUnweighted
                           ? 1.0
                           : static_cast<double>(table.row_total(row));
      const std::vector<double> profile = table.row_profile(row);
      for (std::size_t j = 0; j < profile.size(); ++j)
        out.average_profile[j] += w * profile[j];
      weight_total += w;
      auto coords = ca.row_coords.row(row);
      out.members.push_back({set.variants()[v].id, set.unit(v, pos - 1).seq,
                             std::vector<double>(coords.begin(), coords.end())});
    }
  }
  if (out.members.empty())
    throw Error(ErrorCode::kInvalidArgument, "selector picked no units");
  for (double& x : out.average_profile) x /= weight_total;
  out.average = project_supplementary(ca, out.average_profile);
  return out;
}

namespace {

nlohmann::ordered_json entries_json(std::span<const EndpointEntry> entries) {
  auto arr = nlohmann::ordered_json::array();
  const std::vector<std::size_t> order = rank_by_full_distance(entries);
  std::vector<std::size_t> rank(entries.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r + 1;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const EndpointEntry& e = entries[i];
    nlohmann::ordered_json j;
    j["variant_id"] = e.variant_id;
    j["seq"] = e.seq;
    j["plane"] = e.plane;
    j["plane_distance"] = e.plane_distance;
    j["full_distance"] = e.full_distance;
    j["rank"] = rank[i];
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

std::string to_json(const VariantSet& set, std::span<const EndpointEntry> openings,
                    std::span<const EndpointEntry> closings,
                    std::span<const NamedAverage> averages) {
  using json = nlohmann::ordered_json;
  const CAResult& ca = set.pooled_ca();
  for (const auto* list : {&openings, &closings})
    for (const EndpointEntry& e : *list) require_same_analysis(set, e.analysis_id);

  json j;
  j["schema_version"] = 1;
  j["analysis_id"] = ca.analysis_id;
  j["n_units"] = set.pooled_matrix().rows();
  j["n_words"] = set.pooled_matrix().cols();
  j["rank"] = ca.rank();
  j["inertia_percentages"] =
      ca.rank() ? inertia_percentages(ca) : std::vector<double>{};
  json units = json::array();
  for (std::size_t v = 0; v < set.variants().size(); ++v)
    for (std::size_t p = 0; p < set.unit_count(v); ++p) {
      const auto row = ca.row_coords.row(set.row_of(v, p));
      const std::size_t dims = std::min<std::size_t>(2, ca.rank());
      units.push_back({{"variant_id", set.variants()[v].id},
                       {"seq", set.unit(v, p).seq},
                       {"plane", std::vector<double>(row.begin(), row.begin() + dims)}});
    }
  j["units"] = std::move(units);
  j["openings"] = entries_json(openings);
  j["closings"] = entries_json(closings);
  json avgs = json::array();
  for (const NamedAverage& a : averages) {
    require_same_analysis(set, a.projection.analysis_id);
    json members = json::array();
    for (const ProjectedUnit& m : a.projection.members)
      members.push_back({{"variant_id", m.variant_id}, {"seq", m.seq}});
    avgs.push_back({{"name", a.name},
                    {"members", std::move(members)},
                    {"coords", a.projection.average.coords},
                    {"skipped_axes", a.projection.average.skipped_axes}});
  }
  j["averages"] = std::move(avgs);
  return j.dump(2);
}

}  // namespace nodal

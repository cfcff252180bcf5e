#pragma once

// Pooled analysis of several variants of one narrative in a shared factor
// space. The origin of that space is the corpus average profile.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nodal/ca.hpp"
#include "nodal/corpus.hpp"

namespace nodal {

class VariantSet {
 public:
  /// Requires at least two variants.
  explicit VariantSet(std::vector<Variant> variants, const CAOptions& options = {});

  const std::vector<Variant>& variants() const noexcept { return variants_; }
  const ContingencyMatrix& pooled_matrix() const noexcept { return table_.matrix; }
  const Vocabulary& vocabulary() const noexcept { return table_.vocabulary; }
  const CAResult& pooled_ca() const noexcept { return ca_; }
  const std::string& analysis_id() const noexcept { return ca_.analysis_id; }

  /// Pooled row of (variant index, position within its nonempty units).
  std::size_t row_of(std::size_t variant, std::size_t position) const;
  std::size_t unit_count(std::size_t variant) const;
  const Unit& unit(std::size_t variant, std::size_t position) const;

 private:
  std::vector<Variant> variants_;
  std::vector<std::vector<std::size_t>> kept_;  // nonempty unit indices
  std::vector<std::size_t> offsets_;
  CorpusTable table_;
  CAResult ca_;
};

/// CA over the pooled table (computed once by VariantSet).
const CAResult& pooled_analysis(const VariantSet& set);

enum class Endpoint { kOpening, kClosing };

struct EndpointEntry {
  std::string analysis_id;
  std::string variant_id;
  int seq = 0;
  std::vector<double> plane;  // first `plane_dims` coordinates
  double plane_distance = 0.0;
  double full_distance = 0.0;  // in all R dimensions
};

/// First or last unit of each variant, in variant order.
std::vector<EndpointEntry> endpoint_map(const VariantSet& set, Endpoint which,
                                        std::size_t plane_dims = 2);

/// Indices into the ranking of `entries` by descending full-space distance.
std::vector<std::size_t> rank_by_full_distance(std::span<const EndpointEntry> entries);

enum class ProfileWeighting {
  kUnweighted,    // every selected unit counts once
  kMassWeighted,  // units weighted by their token totals
};

/// Picks 1-based positions within a variant.
using UnitSelector =
    std::function<std::vector<std::size_t>(const Variant&, std::size_t unit_count)>;

struct ProjectedUnit {
  std::string variant_id;
  int seq = 0;
  std::vector<double> coords;
};

struct AverageProjection {
  std::string analysis_id;
  std::vector<ProjectedUnit> members;
  std::vector<double> average_profile;
  SupplementaryPoint average;
};

/// Throws Error(kInvalidArgument) if the selector picks no units at all.
AverageProjection average_profile_projection(
    const VariantSet& set, const UnitSelector& selector,
    ProfileWeighting weighting = ProfileWeighting::kUnweighted);

UnitSelector select_opening();
UnitSelector select_closing();
UnitSelector select_all();

/// Throws Error(kInvalidArgument) when `id` does not match the set's pooled
/// analysis; coordinates from different pooled spaces must not be mixed.
void require_same_analysis(const VariantSet& set, const std::string& id);

struct NamedAverage {
  std::string name;
  AverageProjection projection;
};

std::string to_json(const VariantSet& set, std::span<const EndpointEntry> openings,
                    std::span<const EndpointEntry> closings,
                    std::span<const NamedAverage> averages = {});

}  // namespace nodal

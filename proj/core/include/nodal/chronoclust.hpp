#pragma once

// Sequence-constrained agglomerative clustering with complete linkage.
//
// Only clusters that are adjacent in the input order may merge, so every
// cluster is a contiguous range of positions. Complete linkage under this
// constraint never produces inversions: merge heights are non-decreasing.

#include <cstddef>
#include <string>
#include <vector>

#include "nodal/linalg.hpp"

namespace nodal {

/// Inclusive 1-based range of sequence positions.
struct Range {
  std::size_t first = 1;
  std::size_t last = 1;

  std::size_t size() const noexcept { return last - first + 1; }
  bool operator==(const Range&) const = default;
};

struct Merge {
  Range left;
  Range right;  // right.first == left.last + 1
  double height = 0.0;

  bool operator==(const Merge&) const = default;
};

/// Boundary between positions `after` and `after + 1`.
struct Boundary {
  std::size_t after = 0;
  double height = 0.0;
  std::size_t merge_index = 0;  // 0-based index of the bridging merge
};

class Dendrogram {
 public:
  Dendrogram() = default;
  /// Validates contiguity, adjacency and coverage of the merge list.
  Dendrogram(std::size_t n_leaves, std::vector<Merge> merges);

  std::size_t n_leaves() const noexcept { return n_leaves_; }
  const std::vector<Merge>& merges() const noexcept { return merges_; }
  std::vector<double> heights() const;

 private:
  std::size_t n_leaves_ = 0;
  std::vector<Merge> merges_;
};

enum class Linkage { kComplete };

/// Each row of `points` is one position in the sequence. At every step the
/// adjacent pair with the smallest complete-link distance merges; ties go to
/// the leftmost pair. Requires at least two rows with finite entries.
Dendrogram cluster(const Matrix& points, Linkage linkage = Linkage::kComplete);

/// Undoes the last m - 1 merges; returns m ranges in sequence order.
std::vector<Range> cut(const Dendrogram& dendrogram, std::size_t m);

/// One entry per inter-position boundary (n - 1 of them), in sequence order,
/// carrying the height of the merge that first joins its two sides.
std::vector<Boundary> boundary_heights(const Dendrogram& dendrogram);

/// Boundaries by descending salience: height, then later merge first.
std::vector<Boundary> rank_boundaries(const Dendrogram& dendrogram);

std::string to_json(const Dendrogram& dendrogram);
std::string to_dot(const Dendrogram& dendrogram,
                   const std::vector<std::string>& leaf_labels = {});

}  // namespace nodal

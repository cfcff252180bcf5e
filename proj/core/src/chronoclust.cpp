#include "nodal/chronoclust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "nodal/ca.hpp"
#include "nodal/error.hpp"

namespace nodal {

Dendrogram::Dendrogram(std::size_t n_leaves, std::vector<Merge> merges)
    : n_leaves_(n_leaves), merges_(std::move(merges)) {
  if (n_leaves < 1 || merges_.size() != n_leaves - 1)
    throw Error(ErrorCode::kInvalidArgument,
                "dendrogram needs exactly n - 1 merges");
  // Track the current cluster containing each leaf as its range.
  std::vector<Range> owner(n_leaves + 1);
  for (std::size_t i = 1; i <= n_leaves; ++i) owner[i] = {i, i};
  for (const Merge& m : merges_) {
    if (m.left.first < 1 || m.right.last > n_leaves ||
        m.left.last + 1 != m.right.first || owner[m.left.first] != m.left ||
        owner[m.right.first] != m.right)
      throw Error(ErrorCode::kInvalidArgument,
                  "dendrogram merge does not join two adjacent clusters");
    const Range joined{m.left.first, m.right.last};
    for (std::size_t i = joined.first; i <= joined.last; ++i) owner[i] = joined;
  }
}

std::vector<double> Dendrogram::heights() const {
  std::vector<double> h;
  h.reserve(merges_.size());
  for (const Merge& m : merges_) h.push_back(m.height);
  return h;
}

Dendrogram cluster(const Matrix& points, Linkage) {
  const std::size_t n = points.rows();
  if (n < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "clustering needs at least 2 points, got " + std::to_string(n));
  for (double x : points.data())
    if (!std::isfinite(x))
      throw Error(ErrorCode::kNumeric, "clustering input has non-finite values");

  // Cluster-to-cluster distances, indexed by the cluster's first position
  // (0-based). Complete-link Lance-Williams update: d(a+b, k) = max(d(a,k),
  // d(b,k)).
  Matrix dist(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dist(i, j) = dist(j, i) = euclidean(points.row(i), points.row(j));

  // Active clusters in sequence order: start position and last position.
  std::vector<std::size_t> start(n), last(n);
  for (std::size_t i = 0; i < n; ++i) start[i] = last[i] = i;

  std::vector<Merge> merges;
  merges.reserve(n - 1);
  while (start.size() > 1) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < start.size(); ++k) {
      const double d = dist(start[k], start[k + 1]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    const std::size_t a = start[best];
    const std::size_t b = start[best + 1];
    merges.push_back({{a + 1, last[best] + 1}, {b + 1, last[best + 1] + 1}, best_d});

    for (std::size_t other : start) {
      if (other == a || other == b) continue;
      dist(a, other) = dist(other, a) = std::max(dist(a, other), dist(b, other));
    }
    last[best] = last[best + 1];
    start.erase(start.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    last.erase(last.begin() + static_cast<std::ptrdiff_t>(best) + 1);
  }
  return Dendrogram(n, std::move(merges));
}

std::vector<Boundary> boundary_heights(const Dendrogram& dendrogram) {
  const std::size_t n = dendrogram.n_leaves();
  std::vector<Boundary> out(n ? n - 1 : 0);
  const auto& merges = dendrogram.merges();
  for (std::size_t idx = 0; idx < merges.size(); ++idx) {
    const std::size_t after = merges[idx].left.last;
    out[after - 1] = {after, merges[idx].height, idx};
  }
  return out;
}

std::vector<Boundary> rank_boundaries(const Dendrogram& dendrogram) {
  std::vector<Boundary> ranked = boundary_heights(dendrogram);
  std::sort(ranked.begin(), ranked.end(), [](const Boundary& a, const Boundary& b) {
    if (a.height != b.height) return a.height > b.height;
    return a.merge_index > b.merge_index;
  });
  return ranked;
}

std::vector<Range> cut(const Dendrogram& dendrogram, std::size_t m) {
  const std::size_t n = dendrogram.n_leaves();
  if (m < 1 || m > n)
    throw Error(ErrorCode::kOutOfRange, "cluster count " + std::to_string(m) +
                                            " outside [1, " + std::to_string(n) +
                                            "]");
  // The last m - 1 merges (indices n - m .. n - 2) are undone.
  std::vector<Range> ranges;
  std::size_t first = 1;
  for (const Boundary& b : boundary_heights(dendrogram)) {
    if (b.merge_index + m >= n) {
      ranges.push_back({first, b.after});
      first = b.after + 1;
    }
  }
  ranges.push_back({first, n});
  return ranges;
}

std::string to_json(const Dendrogram& dendrogram) {
  nlohmann::ordered_json j;
  j["n_leaves"] = dendrogram.n_leaves();
  auto merges = nlohmann::ordered_json::array();
  for (const Merge& m : dendrogram.merges()) {
    nlohmann::ordered_json e;
    e["left"] = {m.left.first, m.left.last};
    e["right"] = {m.right.first, m.right.last};
    e["height"] = m.height;
    merges.push_back(std::move(e));
  }
  j["merges"] = std::move(merges);
  return j.dump();
}

std::string to_dot(const Dendrogram& dendrogram,
                   const std::vector<std::string>& leaf_labels) {
  const std::size_t n = dendrogram.n_leaves();
  std::ostringstream out;
  out.precision(6);
  out << "digraph dendrogram {\n"
      << "  rankdir=BT;\n"
      << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string label =
        i <= leaf_labels.size() ? leaf_labels[i - 1] : std::to_string(i);
    out << "  leaf" << i << " [label=\"" << label << "\"];\n";
  }
  out << "  { rank=same;";
  for (std::size_t i = 1; i <= n; ++i) out << " leaf" << i << ";";
  out << " }\n";
  for (std::size_t i = 1; i < n; ++i)
    out << "  leaf" << i << " -> leaf" << i + 1 << " [style=invis];\n";

  // Node currently representing each cluster, keyed by its first leaf.
  std::vector<std::string> node(n + 1);
  for (std::size_t i = 1; i <= n; ++i) node[i] = "leaf" + std::to_string(i);
  const auto& merges = dendrogram.merges();
  for (std::size_t k = 0; k < merges.size(); ++k) {
    const Merge& m = merges[k];
    const std::string id = "merge" + std::to_string(k + 1);
    out << "  " << id << " [shape=ellipse, label=\"" << m.left.first << "-"
        << m.right.last << "\\nh=" << m.height << "\"];\n";
    out << "  " << node[m.left.first] << " -> " << id << ";\n";
    out << "  " << node[m.right.first] << " -> " << id << ";\n";
    node[m.left.first] = id;
  }
  out << "}\n";
  return out.str();
}

}  // namespace nodal

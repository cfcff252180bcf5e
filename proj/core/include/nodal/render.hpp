#pragma once

// Text and SVG renderings. All output is deterministic for a given input.

#include <cstddef>
#include <string>
#include <vector>

#include "nodal/chronoclust.hpp"

namespace nodal {

/// Horizontal dendrogram, one leaf per line, with merge heights scaled to
/// `width` columns. Followed by the numeric merge list.
std::string render_ascii(const Dendrogram& dendrogram, std::size_t width = 60,
                         const std::vector<std::string>& leaf_labels = {});

/// Leaves along the bottom in sequence order, height upwards.
std::string render_dendrogram_svg(const Dendrogram& dendrogram,
                                  const std::string& title,
                                  const std::vector<std::string>& leaf_labels = {});

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;  // empty = plain dot
  bool highlight = false;
};

std::string render_scatter_svg(const std::vector<ScatterPoint>& points,
                               const std::string& title,
                               const std::string& x_axis = "Factor 1",
                               const std::string& y_axis = "Factor 2");

/// Escapes &, <, >, " for XML text and attributes.
std::string xml_escape(const std::string& text);

}  // namespace nodal

#include "nodal/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nodal {

namespace {

std::string num(double v, int precision = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s = buf;
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string label_for(const std::vector<std::string>& labels, std::size_t leaf) {
  return leaf <= labels.size() ? labels[leaf - 1] : std::to_string(leaf);
}

double max_height(const Dendrogram& d) {
  double h = 0.0;
  for (const Merge& m : d.merges()) h = std::max(h, m.height);
  return h;
}

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_ascii(const Dendrogram& dendrogram, std::size_t width,
                         const std::vector<std::string>& leaf_labels) {
  const std::size_t n = dendrogram.n_leaves();
  width = std::max<std::size_t>(width, 10);
  const double hmax = max_height(dendrogram);

  std::size_t label_width = 0;
  for (std::size_t i = 1; i <= n; ++i)
    label_width = std::max(label_width, label_for(leaf_labels, i).size());

  std::vector<std::string> grid(n, std::string(width + 1, ' '));
  struct Node {
    std::size_t row;
    std::size_t col;
    bool leaf;
  };
  std::vector<Node> node(n + 1);
  for (std::size_t i = 1; i <= n; ++i) node[i] = {i - 1, 0, true};

  const auto hline = [&](const Node& from, std::size_t to_col) {
    for (std::size_t c = from.leaf ? from.col : from.col + 1; c < to_col; ++c)
      grid[from.row][c] = '-';
  };

  for (const Merge& m : dendrogram.merges()) {
    const Node left = node[m.left.first];
    const Node right = node[m.right.first];
    std::size_t col =
        hmax > 0.0 ? static_cast<std::size_t>(std::lround(m.height / hmax *
                                                          static_cast<double>(width)))
                   : 0;
    col = std::max({col, left.col, right.col});
    hline(left, col);
    hline(right, col);
    for (std::size_t r = left.row; r <= right.row; ++r) grid[r][col] = '|';
    grid[left.row][col] = '+';
    grid[right.row][col] = '+';
    node[m.left.first] = {(left.row + right.row) / 2, col, false};
  }

  std::ostringstream out;
  for (std::size_t i = 1; i <= n; ++i) {
    std::string line = grid[i - 1];
    while (!line.empty() && line.back() == ' ') line.pop_back();
    const std::string label = label_for(leaf_labels, i);
    out << std::string(label_width - label.size(), ' ') << label << " " << line
        << "\n";
  }
  const std::string lo = "0";
  const std::string hi = num(hmax, 4);
  out << std::string(label_width + 1, ' ') << lo
      << std::string(width + 1 > lo.size() + hi.size()
                         ? width + 1 - lo.size() - hi.size()
                         : 1,
                     ' ')
      << hi << "  (height)\n\nmerges:\n";
  std::size_t step = 1;
  for (const Merge& m : dendrogram.merges()) {
    out << "  " << step++ << ". [" << m.left.first << "-" << m.left.last << "] + ["
        << m.right.first << "-" << m.right.last << "] at " << num(m.height, 6)
        << "\n";
  }
  return out.str();
}

std::string render_dendrogram_svg(const Dendrogram& dendrogram,
                                  const std::string& title,
                                  const std::vector<std::string>& leaf_labels) {
  const std::size_t n = dendrogram.n_leaves();
  const double spacing = 24.0;
  const double left_margin = 70.0, right_margin = 20.0;
  const double top = 50.0, plot_h = 320.0;
  const double bottom = top + plot_h;
  const double width = left_margin + right_margin + spacing * static_cast<double>(n);
  const double height = bottom + 50.0;
  const double hmax = max_height(dendrogram);
  const auto y_of = [&](double h) {
    return hmax > 0.0 ? bottom - h / hmax * plot_h : bottom;
  };

  struct Node {
    double x;
    double y;
  };
  std::vector<Node> node(n + 1);
  for (std::size_t i = 1; i <= n; ++i)
    node[i] = {left_margin + spacing * (static_cast<double>(i) - 0.5), bottom};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width, 0)
      << "\" height=\"" << num(height, 0) << "\" viewBox=\"0 0 " << num(width, 0)
      << " " << num(height, 0) << "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <text x=\"" << num(width / 2, 1) << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-size=\"16\">" << xml_escape(title) << "</text>\n";

  // Height axis.
  out << "  <line x1=\"" << num(left_margin - 10, 1) << "\" y1=\"" << num(top, 1)
      << "\" x2=\"" << num(left_margin - 10, 1) << "\" y2=\"" << num(bottom, 1)
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double h = hmax * t / 4.0;
    const double y = y_of(h);
    out << "  <line x1=\"" << num(left_margin - 14, 1) << "\" y1=\"" << num(y, 1)
        << "\" x2=\"" << num(left_margin - 10, 1) << "\" y2=\"" << num(y, 1)
        << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << num(left_margin - 16, 1) << "\" y=\"" << num(y + 4, 1)
        << "\" text-anchor=\"end\" font-size=\"10\">" << num(h, 3) << "</text>\n";
  }

  out << "  <g stroke=\"#1f3b73\" stroke-width=\"1.5\" fill=\"none\">\n";
  for (const Merge& m : dendrogram.merges()) {
    const Node l = node[m.left.first];
    const Node r = node[m.right.first];
    const double y = y_of(m.height);
    out << "    <path d=\"M" << num(l.x) << "," << num(l.y) << " V" << num(y) << " H"
        << num(r.x) << " V" << num(r.y) << "\"/>\n";
    node[m.left.first] = {(l.x + r.x) / 2.0, y};
  }
  out << "  </g>\n";

  for (std::size_t i = 1; i <= n; ++i) {
    const double x = left_margin + spacing * (static_cast<double>(i) - 0.5);
    out << "  <text x=\"" << num(x, 1) << "\" y=\"" << num(bottom + 16, 1)
        << "\" text-anchor=\"middle\" font-size=\"11\">"
        << xml_escape(label_for(leaf_labels, i)) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_scatter_svg(const std::vector<ScatterPoint>& points,
                               const std::string& title, const std::string& x_axis,
                               const std::string& y_axis) {
  const double size = 600.0, margin = 60.0;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  for (const ScatterPoint& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  // Equal scaling on both axes keeps distances to the origin comparable.
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12}) * 1.1;
  const double cx = (xmin + xmax) / 2.0, cy = (ymin + ymax) / 2.0;
  const double plot = size - 2 * margin;
  const auto px = [&](double x) { return margin + (x - cx) / span * plot + plot / 2; };
  const auto py = [&](double y) { return margin + plot / 2 - (y - cy) / span * plot; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size, 0)
      << "\" height=\"" << num(size, 0) << "\" viewBox=\"0 0 " << num(size, 0) << " "
      << num(size, 0) << "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <text x=\"" << num(size / 2, 1) << "\" y=\"30\" text-anchor=\"middle\" "
      << "font-size=\"16\">" << xml_escape(title) << "</text>\n";
  out << "  <g stroke=\"#888\" stroke-dasharray=\"4,3\">\n";
  out << "    <line x1=\"" << num(margin) << "\" y1=\"" << num(py(0)) << "\" x2=\""
      << num(size - margin) << "\" y2=\"" << num(py(0)) << "\"/>\n";
  out << "    <line x1=\"" << num(px(0)) << "\" y1=\"" << num(margin) << "\" x2=\""
      << num(px(0)) << "\" y2=\"" << num(size - margin) << "\"/>\n";
  out << "  </g>\n";
  out << "  <text x=\"" << num(size - margin) << "\" y=\"" << num(size - margin / 2)
      << "\" text-anchor=\"end\" font-size=\"12\">" << xml_escape(x_axis)
      << "</text>\n";
  out << "  <text x=\"" << num(margin / 2) << "\" y=\"" << num(margin)
      << "\" font-size=\"12\" transform=\"rotate(-90 " << num(margin / 2) << ","
      << num(margin) << ")\" text-anchor=\"end\">" << xml_escape(y_axis)
      << "</text>\n";

  out << "  <g fill=\"#9aa5b1\">\n";
  for (const ScatterPoint& p : points)
    if (!p.highlight)
      out << "    <circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y))
          << "\" r=\"2.5\"/>\n";
  out << "  </g>\n";
  for (const ScatterPoint& p : points) {
    if (!p.highlight) continue;
    out << "  <circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y))
        << "\" r=\"4.5\" fill=\"#c0392b\"/>\n";
    if (!p.label.empty())
      out << "  <text x=\"" << num(px(p.x) + 6) << "\" y=\"" << num(py(p.y) - 6)
          << "\" font-size=\"13\" fill=\"#c0392b\">" << xml_escape(p.label)
          << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace nodal

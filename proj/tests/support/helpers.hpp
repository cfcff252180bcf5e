#pragma once

#include <string>
#include <vector>

#include "nodal/corpus.hpp"
#include "nodal/linalg.hpp"
#include "oracles.hpp"

namespace testing_support {

inline nodal::Matrix to_matrix(const oracle::Dense& rows) {
  nodal::Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline nodal::ContingencyMatrix to_table(const oracle::IntTable& t) {
  std::vector<std::int64_t> flat;
  for (const auto& row : t) flat.insert(flat.end(), row.begin(), row.end());
  return nodal::ContingencyMatrix(t.size(), t[0].size(), std::move(flat));
}

inline std::vector<nodal::Unit> units_from(const std::vector<std::string>& texts,
                                           const std::string& id = "T") {
  std::string joined;
  for (const auto& t : texts) joined += t + "\n\n";
  return nodal::split_units(joined, {}, id);
}

}  // namespace testing_support

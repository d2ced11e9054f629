#include "fairlin/dataset.hpp"

#include <algorithm>
#include <set>

#include "fairlin/errors.hpp"

namespace fairlin {

Dataset Dataset::create(Eigen::MatrixXd x, std::vector<int> s, Eigen::VectorXd y,
                        std::vector<std::string> group_labels) {
  const auto n = x.rows();
  if (n < 1) throw InvalidArgument("dataset must have at least one row");
  if (static_cast<Eigen::Index>(s.size()) != n || y.size() != n)
    throw DimensionMismatch("X rows, S length and Y length must all be equal");
  if (!x.allFinite()) throw NonFiniteInput("X");
  if (!y.allFinite()) throw NonFiniteInput("Y");

  int m = 0;
  for (int label : s) m = std::max(m, label);
  if (m < 2) throw TooFewGroups(m);

  std::vector<char> seen(static_cast<size_t>(m), 0);
  for (int label : s) {
    if (label < 1 || label > m) throw UnknownGroup(label, m);
    seen[static_cast<size_t>(label - 1)] = 1;
  }
  for (int g = 0; g < m; ++g)
    if (!seen[static_cast<size_t>(g)])
      throw UnknownGroup(g + 1, m);  // label gap: not every group in 1..M appears

  if (group_labels.empty()) {
    for (int g = 1; g <= m; ++g) group_labels.push_back(std::to_string(g));
  } else if (static_cast<int>(group_labels.size()) != m) {
    throw LengthMismatch("group label mapping must have one entry per group");
  }

  Dataset out;
  out.x = std::move(x);
  out.s = std::move(s);
  out.y = std::move(y);
  out.group_labels = std::move(group_labels);
  return out;
}

Dataset Dataset::subset(const std::vector<Eigen::Index>& rows) const {
  Eigen::MatrixXd xs(static_cast<Eigen::Index>(rows.size()), x.cols());
  Eigen::VectorXd ys(static_cast<Eigen::Index>(rows.size()));
  std::vector<int> ss(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    xs.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
    ys(static_cast<Eigen::Index>(i)) = y(rows[i]);
    ss[i] = s[static_cast<size_t>(rows[i])];
  }
  return Dataset::create(std::move(xs), std::move(ss), std::move(ys), group_labels);
}

}  // namespace fairlin

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace fairlin {

// In-memory regression dataset with a discrete sensitive attribute.
// Group labels are the integers 1..M; `group_labels[k]` keeps the raw label
// that was mapped to group k+1 (mapping order: first appearance in the
// source). The integer value of the group enters the linear model through
// the gamma * S term, so the mapping is part of the data contract.
struct Dataset {
  Eigen::MatrixXd x;                      // n x d feature matrix
  std::vector<int> s;                     // length n, values in 1..M
  Eigen::VectorXd y;                      // length n
  std::vector<std::string> group_labels;  // size M

  Eigen::Index size() const { return x.rows(); }
  Eigen::Index dim() const { return x.cols(); }
  int group_count() const { return static_cast<int>(group_labels.size()); }

  // Validates all invariants (matching lengths, labels cover 1..M with M >= 2,
  // finite values) and fills default group labels ("1".."M") if none given.
  // Throws DimensionMismatch / TooFewGroups / UnknownGroup / NonFiniteInput.
  static Dataset create(Eigen::MatrixXd x, std::vector<int> s, Eigen::VectorXd y,
                        std::vector<std::string> group_labels = {});

  // Row subset, same label mapping. Every group must survive in the subset.
  Dataset subset(const std::vector<Eigen::Index>& rows) const;
};

}  // namespace fairlin

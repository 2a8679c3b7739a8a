#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rocn/core.hpp"

namespace rocn {

/// Coefficient matrix of a correlation-type Bell functional. Rows index
/// the first party's observables, columns the second party's. "ROCN"
/// stands for the two defining properties: pairwise orthogonal rows and
/// unit-norm columns (rows need not be normalized).
struct RocnMatrix {
  Eigen::MatrixXd entries;
  std::string label;

  RocnMatrix() = default;
  explicit RocnMatrix(Eigen::MatrixXd e, std::string lab = {})
      : entries(std::move(e)), label(std::move(lab)) {}

  int m() const { return static_cast<int>(entries.rows()); }
  int n() const { return static_cast<int>(entries.cols()); }

  Eigen::VectorXd column(int j) const { return entries.col(j); }
};

struct ValidationOutcome {
  bool valid = false;
  double worst_row_pair_residual = 0.0;
  double worst_column_residual = 0.0;
  std::vector<int> zero_rows;
};

/// Checks the two ROCN conditions plus the no-zero-row requirement.
/// Residuals are the worst absolute deviations: max_{i != k} |<r_i, r_k>|
/// for row pairs and max_j |  ||h_j||^2 - 1 | for columns.
inline ValidationOutcome validate_rocn(const Eigen::MatrixXd& entries,
                                       double tolerance = kDefaultTolerance) {
  const int m = static_cast<int>(entries.rows());
  const int n = static_cast<int>(entries.cols());
  if (m < 1 || n < 1) {
    throw DimensionError("validate_rocn: empty matrix");
  }
  if (m > n) {
    throw DimensionError("validate_rocn: more rows than columns (m > n)");
  }
  if (!(tolerance > 0.0)) {
    throw DomainError("validate_rocn: tolerance must be positive");
  }

  ValidationOutcome out;

  const Eigen::MatrixXd gram = entries * entries.transpose();
  for (int i = 0; i < m; ++i) {
    for (int k = i + 1; k < m; ++k) {
      out.worst_row_pair_residual =
          std::max(out.worst_row_pair_residual, std::abs(gram(i, k)));
    }
  }

  for (int j = 0; j < n; ++j) {
    const double dev = std::abs(entries.col(j).squaredNorm() - 1.0);
    out.worst_column_residual = std::max(out.worst_column_residual, dev);
  }

  for (int i = 0; i < m; ++i) {
    if (entries.row(i).cwiseAbs().maxCoeff() <= tolerance) {
      out.zero_rows.push_back(i);
    }
  }

  out.valid = out.worst_row_pair_residual <= tolerance &&
              out.worst_column_residual <= tolerance && out.zero_rows.empty();
  return out;
}

inline ValidationOutcome validate_rocn(const RocnMatrix& h,
                                       double tolerance = kDefaultTolerance) {
  return validate_rocn(h.entries, tolerance);
}

/// Local (classical) bound of the Bell functional: the exact maximum of
/// sum_j |sum_i h_ij a_i| over sign vectors a in {-1,+1}^m. The second
/// party's optimal signs are absorbed by the absolute values, and the
/// a -> -a symmetry lets the search fix a_0 = +1. The scan is a fixed
/// sequential order, so the result is deterministic bit for bit.
inline double classical_bound(const RocnMatrix& h,
                              int enumeration_guard = kEnumerationGuard) {
  const int m = h.m();
  const int n = h.n();
  if (m > enumeration_guard) {
    throw SizeError("classical_bound: m = " + std::to_string(m) +
                    " exceeds the enumeration guard (" +
                    std::to_string(enumeration_guard) + ")");
  }

  std::vector<double> signs(m, 1.0);
  double best = 0.0;
  const std::uint64_t count = std::uint64_t{1} << (m - 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (int i = 1; i < m; ++i) {
      signs[i] = (mask >> (i - 1)) & 1u ? -1.0 : 1.0;
    }
    double score = 0.0;
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) {
        s += signs[i] * h.entries(i, j);
      }
      score += std::abs(s);
    }
    best = std::max(best, score);
  }
  return best;
}

/// Quantum bound of an ROCN Bell functional. For any valid ROCN matrix it
/// equals the number of columns; attainment is verified numerically by
/// the canonical strategy (see strategy.hpp), not re-derived here.
inline double quantum_bound(const RocnMatrix& h) {
  return static_cast<double>(h.n());
}

/// Value of the Bell functional sum_ij h_ij <A_i B_j> on a correlation
/// table. Entries must be bounded by 1 in absolute value up to tolerance.
inline double bell_value(const RocnMatrix& h,
                         const Eigen::MatrixXd& correlations,
                         double tolerance = kDefaultTolerance) {
  if (correlations.rows() != h.entries.rows() ||
      correlations.cols() != h.entries.cols()) {
    throw DimensionError("bell_value: correlation table shape mismatch");
  }
  if (correlations.size() > 0 &&
      correlations.cwiseAbs().maxCoeff() > 1.0 + tolerance) {
    throw DomainError("bell_value: correlation entry outside [-1, 1]");
  }
  return (h.entries.array() * correlations.array()).sum();
}

}  // namespace rocn

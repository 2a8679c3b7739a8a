#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rocn {

inline constexpr const char* kToolVersion = "1.0.0";

/// Default absolute tolerance for validation residuals. Constructed
/// matrices carry irrational surds, so identities that hold exactly in
/// algebra are only reproduced to rounding error in doubles.
inline constexpr double kDefaultTolerance = 1e-9;

/// Relative singular-value cutoff for symmetric spanning ranks.
inline constexpr double kSpanningCutoff = 1e-12;

/// Relative singular-value cutoff for the moment-matrix rank decision.
inline constexpr double kRankCutoff = 1e-9;

/// The local-bound enumeration visits 2^(m-1) sign assignments; refuse
/// anything past this many rows unless the caller raises the guard.
inline constexpr int kEnumerationGuard = 24;

/// Default cap on the constructed family size (n = m(m+1) columns,
/// observable dimension 2^(m/2)). Overridable, see build_self_testing_matrix.
inline constexpr int kConstructionCap = 12;

/// Hard cap on anticommuting-generator synthesis; beyond this the dense
/// 2^(m/2)-dimensional representation stops being cheap.
inline constexpr int kObservableCap = 16;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch: wrong vector length, m > n, ragged rows.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the supported domain (odd m where evenness is
/// required, unknown preset name, index out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds an enumeration or representation guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix file (bad JSON, NaN/Inf entries, shape mismatch).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Dimension of the symmetric subspace of C^m (x) C^m.
inline int symmetric_dimension(int m) { return m * (m + 1) / 2; }

/// Number of unordered pairs i < k drawn from {0, ..., m-1}.
inline int pair_count(int m) { return m * (m - 1) / 2; }

/// Lexicographic position of the pair (i, k), 0 <= i < k < m.
inline int pair_index(int i, int k, int m) {
  return i * m - i * (i + 1) / 2 + (k - i - 1);
}

/// Inverse of pair_index.
inline std::pair<int, int> pair_from_index(int index, int m) {
  int i = 0;
  int row_len = m - 1;
  while (index >= row_len) {
    index -= row_len;
    --row_len;
    ++i;
  }
  return {i, i + 1 + index};
}

}  // namespace rocn

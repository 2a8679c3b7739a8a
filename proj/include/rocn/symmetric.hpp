#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "rocn/core.hpp"

namespace rocn {

/// A vector of the symmetric subspace S(C^m (x) C^m), identified by its
/// coefficient matrix O: psi = sum_{i,k} O_ik |i>|k| with O_ik = O_ki.
/// Only the upper triangle (including the diagonal) is stored, so the
/// symmetry O_ik = O_ki holds by construction rather than by promise.
class SymCoefficients {
 public:
  SymCoefficients() = default;
  explicit SymCoefficients(int dim)
      : dim_(dim), packed_(static_cast<std::size_t>(symmetric_dimension(dim))) {
    if (dim < 1) {
      throw DimensionError("SymCoefficients: dimension must be positive");
    }
  }

  int dim() const { return dim_; }

  std::complex<double> operator()(int i, int k) const {
    return packed_[packed_index(i, k)];
  }

  void set(int i, int k, std::complex<double> value) {
    packed_[packed_index(i, k)] = value;
  }

  double max_abs_diagonal() const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i) {
      worst = std::max(worst, std::abs((*this)(i, i)));
    }
    return worst;
  }

  /// Frobenius norm of the full (unfolded) matrix, i.e. the Hilbert-space
  /// norm of the symmetric vector it represents.
  double frobenius_norm() const {
    double sum = 0.0;
    for (int i = 0; i < dim_; ++i) {
      for (int k = i; k < dim_; ++k) {
        const double a = std::norm((*this)(i, k));
        sum += (i == k) ? a : 2.0 * a;
      }
    }
    return std::sqrt(sum);
  }

  void scale(double factor) {
    for (auto& v : packed_) {
      v *= factor;
    }
  }

  Eigen::MatrixXcd to_dense() const {
    Eigen::MatrixXcd out(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
      for (int k = 0; k < dim_; ++k) {
        out(i, k) = (*this)(i, k);
      }
    }
    return out;
  }

 private:
  std::size_t packed_index(int i, int k) const {
    if (i < 0 || k < 0 || i >= dim_ || k >= dim_) {
      throw DimensionError("SymCoefficients: index out of range");
    }
    if (i > k) {
      std::swap(i, k);
    }
    return static_cast<std::size_t>(i * dim_ - i * (i + 1) / 2 + k);
  }

  int dim_ = 0;
  std::vector<std::complex<double>> packed_;
};

/// Symmetrizer on simple tensors: S(u (x) v) has coefficients
/// O_ik = (u_i v_k + u_k v_i) / 2.
inline SymCoefficients symmetrize(const Eigen::VectorXcd& u,
                                  const Eigen::VectorXcd& v) {
  if (u.size() != v.size()) {
    throw DimensionError("symmetrize: vectors of different dimension");
  }
  const int m = static_cast<int>(u.size());
  SymCoefficients out(m);
  for (int i = 0; i < m; ++i) {
    for (int k = i; k < m; ++k) {
      out.set(i, k, 0.5 * (u(i) * v(k) + u(k) * v(i)));
    }
  }
  return out;
}

inline SymCoefficients symmetrize(const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& v) {
  return symmetrize(Eigen::VectorXcd(u.cast<std::complex<double>>()),
                    Eigen::VectorXcd(v.cast<std::complex<double>>()));
}

/// An ordered list of real unit vectors in R^m with provenance labels.
/// Vectors are normalized on insertion; a zero vector is rejected.
struct VectorFamily {
  int dim = 0;
  std::vector<Eigen::VectorXd> vectors;
  std::vector<std::string> labels;

  VectorFamily() = default;
  explicit VectorFamily(int m) : dim(m) {}

  std::size_t size() const { return vectors.size(); }

  void add(const Eigen::VectorXd& v, std::string label = {}) {
    if (static_cast<int>(v.size()) != dim) {
      throw DimensionError("VectorFamily: vector of wrong dimension");
    }
    const double norm = v.norm();
    if (norm == 0.0) {
      throw DomainError("VectorFamily: zero vector");
    }
    vectors.push_back(v / norm);
    labels.push_back(std::move(label));
  }
};

/// Rank of span{ S(v (x) v) : v in family } inside the m(m+1)/2
/// dimensional symmetric coordinate space. Computed by SVD; singular
/// values below max(rows, cols) * sigma_max * cutoff count as zero.
inline int spanning_rank(const VectorFamily& family,
                         double cutoff = kSpanningCutoff) {
  if (family.vectors.empty()) {
    throw DomainError("spanning_rank: empty family");
  }
  const int m = family.dim;
  const int sym_dim = symmetric_dimension(m);
  const int count = static_cast<int>(family.size());

  // Packed coordinates of v v^T; any linear coordinatization of the
  // symmetric space gives the same rank.
  Eigen::MatrixXd coords(sym_dim, count);
  for (int c = 0; c < count; ++c) {
    const Eigen::VectorXd& v = family.vectors[static_cast<std::size_t>(c)];
    int row = 0;
    for (int i = 0; i < m; ++i) {
      for (int k = i; k < m; ++k) {
        coords(row++, c) = v(i) * v(k);
      }
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coords);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) {
    return 0;
  }
  const double threshold =
      std::max(coords.rows(), coords.cols()) * sigma(0) * cutoff;
  int rank = 0;
  while (rank < sigma.size() && sigma(rank) > threshold) {
    ++rank;
  }
  return rank;
}

/// True when the two-fold self tensor products of the family span the
/// whole symmetric subspace.
inline bool is_symmetric_spanning(const VectorFamily& family,
                                  double cutoff = kSpanningCutoff) {
  return spanning_rank(family, cutoff) == symmetric_dimension(family.dim);
}

/// Coefficients of the k-th orthonormalized vector (k >= 1, counting from
/// the first Gram-Schmidt step): a_ik = alpha_k (e_i - sum_{j<k} e_{i+j})
/// + beta_k e_{i+k}, indices cyclic mod m. Valid for k <= m-1; the m-th
/// vector is the basis completion and follows no such two-parameter form.
inline std::pair<double, double> closed_form_coefficients(int k) {
  if (k < 1) {
    throw DomainError("closed_form_coefficients: k must be >= 1");
  }
  const double kd = static_cast<double>(k);
  return {1.0 / std::sqrt(kd + kd * kd), std::sqrt(kd / (1.0 + kd))};
}

namespace detail {

using LongVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

}  // namespace detail

/// Orthonormal family {a_i1, ..., a_im} obtained by Gram-Schmidt from the
/// ordered list [(e_i + e_{i+1})/sqrt(2), ..., (e_i + e_{i+m-1})/sqrt(2),
/// e_i], with cyclic index arithmetic mod m and 0-based i.
///
/// The input order matters: it is the one for which the closed forms of
/// closed_form_coefficients hold. Signs are fixed so the coefficient of
/// e_{i+k} is positive for the first m-1 vectors and the coefficient of
/// e_i is positive for the last one. Internally the orthogonalization
/// runs in extended precision and rounds once at the end, so the output
/// is orthonormal to well below 1e-12 for every supported m.
inline VectorFamily gram_schmidt_family(int m, int i) {
  if (m < 2) {
    throw DomainError("gram_schmidt_family: m must be >= 2");
  }
  if (i < 0 || i >= m) {
    throw DomainError("gram_schmidt_family: index i out of range");
  }

  const long double inv_sqrt2 = 1.0L / std::sqrt(2.0L);

  std::vector<detail::LongVector> inputs;
  inputs.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k < m; ++k) {
    detail::LongVector v = detail::LongVector::Zero(m);
    v(i) += inv_sqrt2;
    v((i + k) % m) += inv_sqrt2;
    inputs.push_back(std::move(v));
  }
  {
    detail::LongVector v = detail::LongVector::Zero(m);
    v(i) = 1.0L;
    inputs.push_back(std::move(v));
  }

  // Modified Gram-Schmidt with one re-orthogonalization pass.
  std::vector<detail::LongVector> basis;
  basis.reserve(inputs.size());
  for (auto& v : inputs) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        v -= q.dot(v) * q;
      }
    }
    const long double norm = v.norm();
    if (norm <= 0.0L) {
      throw Error("gram_schmidt_family: degenerate input list");
    }
    basis.push_back(v / norm);
  }

  VectorFamily family(m);
  for (int k = 0; k < m; ++k) {
    // k-th output is the (k+1)-th orthonormalized vector.
    const int anchor = (k + 1 < m) ? (i + k + 1) % m : i;
    detail::LongVector& q = basis[static_cast<std::size_t>(k)];
    if (q(anchor) < 0.0L) {
      q = -q;
    }
    // Inserted directly: q is unit to extended precision and rounding each
    // entry once preserves that; renormalizing in double would only add
    // noise to the final bits.
    family.vectors.push_back(q.cast<double>());
    family.labels.push_back("a_{" + std::to_string(i + 1) + "," +
                            std::to_string(k + 1) + "}");
  }
  return family;
}

}  // namespace rocn

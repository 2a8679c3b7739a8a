#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rocn/core.hpp"
#include "rocn/matrix.hpp"

namespace rocn {

/// A list of d x d Hermitian involutions (two-outcome observables).
struct ObservableSet {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> ops;

  std::size_t size() const { return ops.size(); }
};

namespace detail {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Eigen::MatrixXcd pauli(char which) {
  const std::complex<double> I(0.0, 1.0);
  Eigen::MatrixXcd p(2, 2);
  switch (which) {
    case 'x':
      p << 0, 1, 1, 0;
      break;
    case 'y':
      p << 0, -I, I, 0;
      break;
    default:
      p << 1, 0, 0, -1;
      break;
  }
  return p;
}

/// Pauli string Z^(p-1) (x) s (x) I^(r-p) on r sites (1-based site p).
inline Eigen::MatrixXcd jordan_wigner_string(int sites, int site, char s) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 1; q <= sites; ++q) {
    if (q < site) {
      out = kron(out, pauli('z'));
    } else if (q == site) {
      out = kron(out, pauli(s));
    } else {
      out = kron(out, Eigen::MatrixXcd::Identity(2, 2));
    }
  }
  return out;
}

}  // namespace detail

/// Family of m pairwise anticommuting Hermitian involutions on dimension
/// d = 2^floor(m/2), built from Jordan-Wigner strings: the (2p-1)-th and
/// (2p)-th generators put X respectively Y at site p behind a Z tail.
/// For odd m the family is completed by the full Z string, which
/// anticommutes with every X/Y string. All entries lie in {0, +-1, +-i},
/// so trace identities evaluate exactly in double precision.
inline ObservableSet clifford_generators(int m) {
  if (m < 2) {
    throw DomainError("clifford_generators: m must be >= 2");
  }
  if (m > kObservableCap) {
    throw SizeError("clifford_generators: m = " + std::to_string(m) +
                    " exceeds the representation cap (" +
                    std::to_string(kObservableCap) + ")");
  }
  const int sites = m / 2;
  ObservableSet set;
  set.dim = 1 << sites;
  for (int p = 1; p <= sites; ++p) {
    set.ops.push_back(detail::jordan_wigner_string(sites, p, 'x'));
    set.ops.push_back(detail::jordan_wigner_string(sites, p, 'y'));
  }
  if (m % 2 != 0) {
    set.ops.push_back(detail::jordan_wigner_string(sites, sites + 1, 'z'));
  }
  return set;
}

/// Reference strategy attaining the quantum bound: the maximally
/// entangled state |Phi_d> (kept implicit; see correlations), Alice's
/// anticommuting generators, and Bob's observables B_j = sum_i h_ij A_i^T.
/// The transpose is taken in the same computational basis in which
/// |Phi_d> is written; mixing bases here would silently break the
/// correlation identity <A_i B_j> = h_ij.
struct QuantumStrategy {
  int dim = 0;
  ObservableSet alice;
  ObservableSet bob;
  std::string state_form;  // "maximally-entangled(d)"
};

inline QuantumStrategy canonical_strategy(const RocnMatrix& h) {
  QuantumStrategy strategy;
  strategy.alice = clifford_generators(h.m());
  strategy.dim = strategy.alice.dim;
  strategy.state_form =
      "maximally-entangled(" + std::to_string(strategy.dim) + ")";

  strategy.bob.dim = strategy.dim;
  for (int j = 0; j < h.n(); ++j) {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(strategy.dim, strategy.dim);
    for (int i = 0; i < h.m(); ++i) {
      b += h.entries(i, j) * strategy.alice.ops[static_cast<std::size_t>(i)]
                                 .transpose();
    }
    strategy.bob.ops.push_back(std::move(b));
  }
  return strategy;
}

/// One- and two-body expectation values on the maximally entangled state.
struct CorrelationTable {
  Eigen::VectorXd mean_alice;
  Eigen::VectorXd mean_bob;
  Eigen::MatrixXd joint;

  int m() const { return static_cast<int>(mean_alice.size()); }
  int n() const { return static_cast<int>(mean_bob.size()); }
};

/// Expectation values via the maximally-entangled-state trace identities
/// <A> = Tr(A)/d, <B> = Tr(B)/d, <A B> = Tr(A B^T)/d. The two-body trace
/// is evaluated as the entrywise sum sum_{rs} A_rs B_rs, which is the
/// same quantity without the intermediate product.
inline CorrelationTable correlations(const QuantumStrategy& strategy) {
  const int m = static_cast<int>(strategy.alice.size());
  const int n = static_cast<int>(strategy.bob.size());
  const double d = static_cast<double>(strategy.dim);

  CorrelationTable table;
  table.mean_alice.resize(m);
  table.mean_bob.resize(n);
  table.joint.resize(m, n);
  for (int i = 0; i < m; ++i) {
    table.mean_alice(i) = strategy.alice.ops[static_cast<std::size_t>(i)]
                              .trace().real() / d;
  }
  for (int j = 0; j < n; ++j) {
    table.mean_bob(j) = strategy.bob.ops[static_cast<std::size_t>(j)]
                            .trace().real() / d;
  }
  for (int i = 0; i < m; ++i) {
    const auto& a = strategy.alice.ops[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const auto& b = strategy.bob.ops[static_cast<std::size_t>(j)];
      table.joint(i, j) = (a.array() * b.array()).sum().real() / d;
    }
  }
  return table;
}

/// Cross-validation path: builds |Phi_d> as an explicit d^2 state vector
/// and evaluates <Phi|A (x) B|Phi> with a dense Kronecker product. Kept
/// deliberately independent of the trace-identity path; guarded to small
/// dimensions where the d^2 x d^2 product is cheap.
inline CorrelationTable correlations_via_state(const QuantumStrategy& strategy,
                                               int max_dim = 8) {
  const int d = strategy.dim;
  if (d > max_dim) {
    throw SizeError("correlations_via_state: dimension " + std::to_string(d) +
                    " exceeds the explicit-state cap");
  }
  const int m = static_cast<int>(strategy.alice.size());
  const int n = static_cast<int>(strategy.bob.size());

  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(d * d);
  for (int i = 0; i < d; ++i) {
    phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);

  auto expectation = [&](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const Eigen::MatrixXcd op = detail::kron(a, b);
    return std::complex<double>(phi.adjoint() * op * phi).real();
  };

  CorrelationTable table;
  table.mean_alice.resize(m);
  table.mean_bob.resize(n);
  table.joint.resize(m, n);
  for (int i = 0; i < m; ++i) {
    table.mean_alice(i) =
        expectation(strategy.alice.ops[static_cast<std::size_t>(i)], eye);
  }
  for (int j = 0; j < n; ++j) {
    table.mean_bob(j) =
        expectation(eye, strategy.bob.ops[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      table.joint(i, j) =
          expectation(strategy.alice.ops[static_cast<std::size_t>(i)],
                      strategy.bob.ops[static_cast<std::size_t>(j)]);
    }
  }
  return table;
}

/// Outcome probabilities p(a, b | i, j) for a, b in {+1, -1}, stored with
/// outcome index 0 -> +1 and 1 -> -1.
struct ProbabilityTensor {
  int m = 0;
  int n = 0;
  std::vector<double> values;  // [i][j][a][b] flattened

  double at(int i, int j, int a, int b) const {
    return values[static_cast<std::size_t>(((i * n + j) * 2 + a) * 2 + b)];
  }
  double& at(int i, int j, int a, int b) {
    return values[static_cast<std::size_t>(((i * n + j) * 2 + a) * 2 + b)];
  }
};

/// Affine reconstruction of probabilities from expectation values:
/// p(a,b|i,j) = (1 + a <A_i> + b <B_j> + ab <A_i B_j>) / 4.
inline ProbabilityTensor probabilities(const CorrelationTable& table,
                                       double tolerance = kDefaultTolerance) {
  const int m = table.m();
  const int n = table.n();
  const double bound = 1.0 + tolerance;
  if ((m > 0 && table.mean_alice.cwiseAbs().maxCoeff() > bound) ||
      (n > 0 && table.mean_bob.cwiseAbs().maxCoeff() > bound) ||
      (table.joint.size() > 0 && table.joint.cwiseAbs().maxCoeff() > bound)) {
    throw DomainError("probabilities: expectation value outside [-1, 1]");
  }

  ProbabilityTensor tensor;
  tensor.m = m;
  tensor.n = n;
  tensor.values.resize(static_cast<std::size_t>(m) * n * 4);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int ai = 0; ai < 2; ++ai) {
        for (int bi = 0; bi < 2; ++bi) {
          const double a = ai == 0 ? 1.0 : -1.0;
          const double b = bi == 0 ? 1.0 : -1.0;
          tensor.at(i, j, ai, bi) =
              0.25 * (1.0 + a * table.mean_alice(i) + b * table.mean_bob(j) +
                      a * b * table.joint(i, j));
        }
      }
    }
  }
  return tensor;
}

/// Worst-case residuals of the observable invariants.
struct StrategyResiduals {
  double hermiticity = 0.0;
  double involution = 0.0;
  double anticommutation = 0.0;  // off-diagonal anticommutators, Alice side
  double probability_normalization = 0.0;

  double worst() const {
    return std::max(std::max(hermiticity, involution),
                    std::max(anticommutation, probability_normalization));
  }
};

inline double hermiticity_residual(const ObservableSet& set) {
  double worst = 0.0;
  for (const auto& op : set.ops) {
    worst = std::max(worst,
                     (op - op.adjoint()).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline double involution_residual(const ObservableSet& set) {
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(set.dim, set.dim);
  double worst = 0.0;
  for (const auto& op : set.ops) {
    worst = std::max(worst, (op * op - eye).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline double anticommutation_residual(const ObservableSet& set) {
  double worst = 0.0;
  for (std::size_t i = 0; i < set.ops.size(); ++i) {
    for (std::size_t k = i + 1; k < set.ops.size(); ++k) {
      const Eigen::MatrixXcd anti =
          set.ops[i] * set.ops[k] + set.ops[k] * set.ops[i];
      worst = std::max(worst, anti.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

inline double probability_normalization_residual(
    const ProbabilityTensor& tensor) {
  double worst = 0.0;
  for (int i = 0; i < tensor.m; ++i) {
    for (int j = 0; j < tensor.n; ++j) {
      const double sum = tensor.at(i, j, 0, 0) + tensor.at(i, j, 0, 1) +
                         tensor.at(i, j, 1, 0) + tensor.at(i, j, 1, 1);
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  return worst;
}

inline StrategyResiduals strategy_residuals(const QuantumStrategy& strategy,
                                            const CorrelationTable& table) {
  StrategyResiduals res;
  res.hermiticity = std::max(hermiticity_residual(strategy.alice),
                             hermiticity_residual(strategy.bob));
  res.involution = std::max(involution_residual(strategy.alice),
                            involution_residual(strategy.bob));
  res.anticommutation = anticommutation_residual(strategy.alice);
  res.probability_normalization =
      probability_normalization_residual(probabilities(table));
  return res;
}

/// Deviation |I_h(canonical correlations) - n| of the synthesized
/// strategy from the analytic quantum bound. The tolerance only bounds
/// the internal sanity checks on the correlation entries; judging the
/// returned deviation is the caller's business.
inline double verify_quantum_bound(const RocnMatrix& h,
                                   double tolerance = kDefaultTolerance) {
  const CorrelationTable table = correlations(canonical_strategy(h));
  const double value = bell_value(h, table.joint, tolerance);
  return std::abs(value - quantum_bound(h));
}

}  // namespace rocn

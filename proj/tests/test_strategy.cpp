#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "rocn/construct.hpp"
#include "rocn/strategy.hpp"

#include "fixtures.hpp"

using rocn::RocnMatrix;

namespace {

const std::complex<double> kI(0.0, 1.0);

Eigen::MatrixXcd pauli_x() {
  Eigen::MatrixXcd p(2, 2);
  p << 0, 1, 1, 0;
  return p;
}

Eigen::MatrixXcd pauli_y() {
  Eigen::MatrixXcd p(2, 2);
  p << 0, -kI, kI, 0;
  return p;
}

Eigen::MatrixXcd pauli_z() {
  Eigen::MatrixXcd p(2, 2);
  p << 1, 0, 0, -1;
  return p;
}

}  // namespace

TEST_CASE("two generators are the X and Y involutions", "[strategy]") {
  const auto set = rocn::clifford_generators(2);
  REQUIRE(set.dim == 2);
  REQUIRE(set.size() == 2);
  CHECK(set.ops[0] == pauli_x());
  CHECK(set.ops[1] == pauli_y());
  CHECK(rocn::anticommutation_residual(set) == 0.0);
  CHECK(rocn::involution_residual(set) == 0.0);
}

TEST_CASE("odd generator counts append the Z string", "[strategy]") {
  const auto set = rocn::clifford_generators(3);
  REQUIRE(set.dim == 2);
  REQUIRE(set.size() == 3);
  CHECK(set.ops[2] == pauli_z());
  CHECK(rocn::anticommutation_residual(set) == 0.0);
}

TEST_CASE("generator invariants hold for every supported m",
          "[strategy][property]") {
  for (int m = 2; m <= 12; ++m) {
    const auto set = rocn::clifford_generators(m);
    REQUIRE(set.dim == 1 << (m / 2));
    REQUIRE(static_cast<int>(set.size()) == m);

    CHECK(rocn::hermiticity_residual(set) <= 1e-12);
    CHECK(rocn::involution_residual(set) <= 1e-12);
    CHECK(rocn::anticommutation_residual(set) <= 1e-12);

    // Entries are 0, +-1, +-i, so traces evaluate without rounding.
    const double d = static_cast<double>(set.dim);
    for (std::size_t i = 0; i < set.size(); ++i) {
      CHECK(set.ops[i].trace() == std::complex<double>(0.0));
      for (std::size_t k = 0; k < set.size(); ++k) {
        const std::complex<double> t = (set.ops[i] * set.ops[k]).trace();
        CHECK(t == std::complex<double>(i == k ? d : 0.0));
      }
    }
  }
  CHECK_THROWS_AS(rocn::clifford_generators(1), rocn::DomainError);
  CHECK_THROWS_AS(rocn::clifford_generators(18), rocn::SizeError);
}

TEST_CASE("canonical strategy wires Bob's observables from the columns",
          "[strategy]") {
  const RocnMatrix eye(Eigen::MatrixXd::Identity(4, 4));
  const auto strategy = rocn::canonical_strategy(eye);
  REQUIRE(strategy.bob.size() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(strategy.bob.ops[static_cast<std::size_t>(j)] ==
          strategy.alice.ops[static_cast<std::size_t>(j)].transpose());
  }
  CHECK(strategy.state_form == "maximally-entangled(4)");

  const auto chsh = rocn::canonical_strategy(RocnMatrix(fixtures::chsh()));
  const double s = std::sqrt(0.5);
  CHECK((chsh.bob.ops[0] - s * (pauli_x() - pauli_y())).cwiseAbs().maxCoeff() <=
        1e-15);
  CHECK((chsh.bob.ops[1] - s * (pauli_x() + pauli_y())).cwiseAbs().maxCoeff() <=
        1e-15);
  CHECK(rocn::involution_residual(chsh.bob) <= 1e-12);
}

TEST_CASE("Bob's observables square to identity for any valid matrix",
          "[strategy][property]") {
  for (int m : {2, 4}) {
    const auto strategy =
        rocn::canonical_strategy(rocn::build_self_testing_matrix(m));
    CHECK(rocn::involution_residual(strategy.bob) <= 1e-12);
    CHECK(rocn::hermiticity_residual(strategy.bob) <= 1e-12);
  }
}

TEST_CASE("canonical correlations reproduce the coefficient matrix",
          "[strategy]") {
  for (const RocnMatrix& h :
       {RocnMatrix(fixtures::chsh()), rocn::preset("elegant"),
        rocn::build_self_testing_matrix(2),
        rocn::build_self_testing_matrix(4)}) {
    const auto table = rocn::correlations(rocn::canonical_strategy(h));
    CHECK((table.joint - h.entries).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(table.mean_alice.cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(table.mean_bob.cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(rocn::bell_value(h, table.joint) ==
          Catch::Approx(rocn::quantum_bound(h)).margin(1e-9));
  }
}

TEST_CASE("trace-identity and explicit-state paths agree", "[strategy]") {
  for (int m = 2; m <= 6; ++m) {
    const RocnMatrix h = m % 2 == 0
                             ? rocn::build_self_testing_matrix(m)
                             : RocnMatrix(Eigen::MatrixXd::Identity(m, m));
    const auto strategy = rocn::canonical_strategy(h);
    const auto direct = rocn::correlations(strategy);
    const auto explicit_state = rocn::correlations_via_state(strategy);
    CHECK((direct.joint - explicit_state.joint).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK((direct.mean_alice - explicit_state.mean_alice)
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    CHECK((direct.mean_bob - explicit_state.mean_bob).cwiseAbs().maxCoeff() <=
          1e-12);
  }
  // d = 16 exceeds the explicit-state cap.
  const auto big = rocn::canonical_strategy(rocn::build_self_testing_matrix(8));
  CHECK_THROWS_AS(rocn::correlations_via_state(big), rocn::SizeError);
}

TEST_CASE("probability reconstruction from expectation values", "[strategy]") {
  rocn::CorrelationTable perfect;
  perfect.mean_alice = Eigen::VectorXd::Zero(1);
  perfect.mean_bob = Eigen::VectorXd::Zero(1);
  perfect.joint = Eigen::MatrixXd::Constant(1, 1, 1.0);
  const auto tensor = rocn::probabilities(perfect);
  CHECK(tensor.at(0, 0, 0, 0) == 0.5);
  CHECK(tensor.at(0, 0, 1, 1) == 0.5);
  CHECK(tensor.at(0, 0, 0, 1) == 0.0);
  CHECK(tensor.at(0, 0, 1, 0) == 0.0);

  rocn::CorrelationTable flat = perfect;
  flat.joint.setZero();
  const auto uniform = rocn::probabilities(flat);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      CHECK(uniform.at(0, 0, a, b) == 0.25);
    }
  }

  rocn::CorrelationTable bad = perfect;
  bad.joint(0, 0) = 1.5;
  CHECK_THROWS_AS(rocn::probabilities(bad), rocn::DomainError);
}

TEST_CASE("canonical probabilities are sound and round-trip", "[strategy]") {
  for (const RocnMatrix& h :
       {RocnMatrix(fixtures::chsh()), rocn::build_self_testing_matrix(4)}) {
    const auto table = rocn::correlations(rocn::canonical_strategy(h));
    const auto tensor = rocn::probabilities(table);
    CHECK(rocn::probability_normalization_residual(tensor) <= 1e-12);
    double reconstruction = 0.0;
    for (int i = 0; i < tensor.m; ++i) {
      for (int j = 0; j < tensor.n; ++j) {
        double joint = 0.0;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            CHECK(tensor.at(i, j, a, b) >= -1e-12);
            const double sa = a == 0 ? 1.0 : -1.0;
            const double sb = b == 0 ? 1.0 : -1.0;
            joint += sa * sb * tensor.at(i, j, a, b);
          }
        }
        reconstruction =
            std::max(reconstruction, std::abs(joint - table.joint(i, j)));
      }
    }
    CHECK(reconstruction <= 1e-12);
  }

  // The CHSH (1,1) setting: p(+,+) = (1 + 1/sqrt2)/4.
  const auto chsh_tensor = rocn::probabilities(
      rocn::correlations(rocn::canonical_strategy(RocnMatrix(fixtures::chsh()))));
  CHECK(chsh_tensor.at(0, 0, 0, 0) ==
        Catch::Approx(0.42677669529663687).margin(1e-12));
}

TEST_CASE("quantum bound attainment", "[strategy]") {
  CHECK(rocn::verify_quantum_bound(RocnMatrix(fixtures::chsh())) <= 1e-12);
  CHECK(rocn::verify_quantum_bound(rocn::preset("elegant")) <= 1e-9);
  CHECK(rocn::verify_quantum_bound(rocn::build_self_testing_matrix(2)) <=
        1e-9);
  CHECK(rocn::verify_quantum_bound(rocn::build_self_testing_matrix(4)) <=
        1e-9);
}

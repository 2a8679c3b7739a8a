#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "rocn/core.hpp"
#include "rocn/matrix.hpp"
#include "rocn/symmetric.hpp"

namespace rocn {

/// Ordered orthogonal blocks whose concatenation forms the self-testing
/// matrix: the identity (optional) followed by one Gram-Schmidt basis per
/// row index.
struct BlockPlan {
  int m = 0;
  bool include_identity_block = true;
  std::vector<Eigen::MatrixXd> blocks;
};

inline BlockPlan plan_blocks(int m, bool include_identity_block,
                             int max_m = kConstructionCap) {
  if (m < 2 || m % 2 != 0) {
    throw DomainError("plan_blocks: m must be even and >= 2");
  }
  if (m > max_m) {
    throw SizeError("plan_blocks: m = " + std::to_string(m) +
                    " exceeds the construction cap (" + std::to_string(max_m) +
                    ")");
  }

  BlockPlan plan;
  plan.m = m;
  plan.include_identity_block = include_identity_block;
  if (include_identity_block) {
    plan.blocks.push_back(Eigen::MatrixXd::Identity(m, m));
  }
  for (int i = 0; i < m; ++i) {
    const VectorFamily family = gram_schmidt_family(m, i);
    Eigen::MatrixXd block(m, m);
    for (int k = 0; k < m; ++k) {
      block.col(k) = family.vectors[static_cast<std::size_t>(k)];
    }
    plan.blocks.push_back(std::move(block));
  }

  for (const auto& block : plan.blocks) {
    const double residual =
        (block.transpose() * block - Eigen::MatrixXd::Identity(m, m))
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-12) {
      throw Error("plan_blocks: block failed the orthogonality check");
    }
  }
  return plan;
}

/// Self-testing ROCN matrix of size m x m(m+1): the horizontal
/// concatenation of the identity block with the m Gram-Schmidt bases.
/// Each block is orthogonal, so columns are unit and rows stay mutually
/// orthogonal; the column set is a symmetric spanning set, which makes
/// the maximal quantum value self-test the canonical strategy. Dropping
/// the identity block (m x m^2 result) keeps the rank criterion intact.
inline RocnMatrix build_self_testing_matrix(int m,
                                            bool include_identity_block = true,
                                            int max_m = kConstructionCap) {
  const BlockPlan plan = plan_blocks(m, include_identity_block, max_m);
  const int blocks = static_cast<int>(plan.blocks.size());

  Eigen::MatrixXd entries(m, blocks * m);
  for (int b = 0; b < blocks; ++b) {
    entries.block(0, b * m, m, m) = plan.blocks[static_cast<std::size_t>(b)];
  }
  return RocnMatrix(std::move(entries),
                    "construct-v1;m=" + std::to_string(m) + ";identity=" +
                        (include_identity_block ? "true" : "false"));
}

/// Named reference inequalities in ROCN form.
///
/// chsh: the 2x2 matrix (1/sqrt 2) [[1, 1], [1, -1]].
/// elegant: the 3x4 matrix whose columns are (+-1, +-1, +-1)/sqrt 3 with
/// an even number of minus signs; any relabeling of the sign pattern
/// passes the same checks, this one is frozen for reproducibility.
inline RocnMatrix preset(std::string_view name) {
  if (name == "chsh") {
    const double s = std::sqrt(0.5);
    Eigen::MatrixXd entries(2, 2);
    entries << s, s, s, -s;
    return RocnMatrix(std::move(entries), "preset;chsh");
  }
  if (name == "elegant") {
    const double t = 1.0 / std::sqrt(3.0);
    Eigen::MatrixXd entries(3, 4);
    entries << t, t, -t, -t,
               t, -t, t, -t,
               t, -t, -t, t;
    return RocnMatrix(std::move(entries), "preset;elegant");
  }
  throw DomainError("preset: unknown name '" + std::string(name) + "'");
}

}  // namespace rocn

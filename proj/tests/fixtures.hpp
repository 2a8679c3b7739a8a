#pragma once

// Golden matrices shared by the unit and acceptance suites.

#include <Eigen/Dense>
#include <cmath>

namespace fixtures {

inline Eigen::MatrixXd chsh() {
  const double s = std::sqrt(0.5);
  Eigen::MatrixXd h(2, 2);
  h << s, s,
       s, -s;
  return h;
}

// The three 2x2 blocks of the m=2 construction.
inline Eigen::MatrixXd m2_block(int ell) {
  const double s = std::sqrt(0.5);
  Eigen::MatrixXd block(2, 2);
  switch (ell) {
    case 0:
      block << 1, 0,
               0, 1;
      break;
    case 1:
      block << s, s,
               s, -s;
      break;
    default:
      block << s, -s,
               s, s;
      break;
  }
  return block;
}

inline Eigen::MatrixXd m2_full() {
  Eigen::MatrixXd h(2, 6);
  h.block(0, 0, 2, 2) = m2_block(0);
  h.block(0, 2, 2, 2) = m2_block(1);
  h.block(0, 4, 2, 2) = m2_block(2);
  return h;
}

// The five 4x4 blocks of the m=4 construction. Entry values are the
// surds 1/sqrt2, 1/sqrt6, sqrt(2/3), 1/(2 sqrt3), sqrt3/2 and 1/2; each
// block after the identity is the previous one with rows cycled down.
inline Eigen::MatrixXd m4_block(int ell) {
  const double a = std::sqrt(0.5);        // 1/sqrt(2)
  const double b = std::sqrt(1.0 / 6.0);  // 1/sqrt(6)
  const double c = std::sqrt(2.0 / 3.0);
  const double d = std::sqrt(1.0 / 12.0);  // 1/(2 sqrt(3))
  const double e = std::sqrt(0.75);        // sqrt(3)/2
  const double f = 0.5;

  Eigen::MatrixXd block(4, 4);
  if (ell == 0) {
    block.setIdentity();
    return block;
  }
  Eigen::MatrixXd base(4, 4);
  base << a, b, d, f,
          a, -b, -d, -f,
          0, c, -d, -f,
          0, 0, e, -f;
  for (int r = 0; r < 4; ++r) {
    block.row((r + ell - 1) % 4) = base.row(r);
  }
  return block;
}

inline Eigen::MatrixXd m4_full() {
  Eigen::MatrixXd h(4, 20);
  for (int ell = 0; ell <= 4; ++ell) {
    h.block(0, 4 * ell, 4, 4) = m4_block(ell);
  }
  return h;
}

}  // namespace fixtures

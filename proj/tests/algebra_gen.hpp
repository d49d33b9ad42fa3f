#pragma once

// Random left-invariant algebras that satisfy the Jacobi identity by
// construction, for property tests.

#include <Eigen/Dense>
#include <random>

#include "mcplab/frame_algebra.hpp"

namespace testgen {

using mcplab::geometry::FrameAlgebra;
using mcplab::geometry::Mat;

inline Mat random_spd(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = g(rng);
  return a * a.transpose() / d + Mat::Identity(d, d);
}

/// 2-step nilpotent: [e_a, e_b] in span(e_3, e_4) for a, b < 3; e_3, e_4 central.
inline FrameAlgebra random_nilpotent(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  FrameAlgebra alg;
  alg.dim = 5;
  alg.bracket = mcplab::Tensor3(5);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (int k = 3; k < 5; ++k) {
        const double v = g(rng);
        alg.bracket(a, b, k) = v;
        alg.bracket(b, a, k) = -v;
      }
  alg.metric = random_spd(rng, 5);
  return alg;
}

/// R acting on R^4 by a random matrix: [e_0, e_i] = sum_k M(k,i) e_k.
inline FrameAlgebra random_semidirect(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  FrameAlgebra alg;
  alg.dim = 5;
  alg.bracket = mcplab::Tensor3(5);
  for (int i = 1; i < 5; ++i)
    for (int k = 1; k < 5; ++k) {
      const double v = g(rng);
      alg.bracket(0, i, k) = v;
      alg.bracket(i, 0, k) = -v;
    }
  alg.metric = random_spd(rng, 5);
  return alg;
}

inline FrameAlgebra abelian(int d) {
  FrameAlgebra alg;
  alg.dim = d;
  alg.bracket = mcplab::Tensor3(d);
  alg.metric = Mat::Identity(d, d);
  return alg;
}

}  // namespace testgen

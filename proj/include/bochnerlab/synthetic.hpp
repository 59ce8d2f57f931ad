#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bochnerlab/cframe.hpp"
#include "bochnerlab/tensor.hpp"

namespace bochnerlab::synth {

// Pointwise almost Hermitian data for exercising the curvature algebra
// without a manifold: flat metric, standard block J, a diagonal hybrid q
// with doubled eigenvalues mu, an admissible nabla-J surrogate and a
// matching nabla-q surrogate.  The frame is the complexified coordinate
// frame, so z[k] pairs the k-th eigenvalue.
struct SyntheticPoint {
  int n = 0;
  int dim = 0;
  tensor::PointTensor g, g_inv;  // identity
  tensor::PointTensor j;         // standard block structure
  tensor::PointTensor q;         // (0,2) diagonal, mu doubled over the blocks
  std::vector<double> mu;
  tensor::PointTensor a;   // (0,3): direction, argument, lowered output
  tensor::PointTensor dq;  // (0,3): direction first, symmetric in the rest
  cframe::AdaptedFrame frame;
};

// Projection of a (0,3) tensor onto the admissible nabla-J surrogates:
// skew in the last two slots and sign-reversing under J applied to both of
// them.  The two projections commute, so the result is idempotent.
tensor::PointTensor admissible_projection(const tensor::PointTensor& t,
                                          const tensor::PointTensor& j);

// The part of a nabla-q surrogate that hybridity of q forces: differentiating
// q(y,z) = q(Jy,Jz) leaves dq(y,z) - dq(Jy,Jz) = q(A_dir y, Jz) + q(Jy, A_dir z)
// with A_dir the endomorphism raised from a(dir,.,.).  Returns that right side
// as a (0,3) tensor over the direction slot.
tensor::PointTensor forced_dq_part(const tensor::PointTensor& q,
                                   const tensor::PointTensor& a,
                                   const tensor::PointTensor& g_inv,
                                   const tensor::PointTensor& j);

// Deterministic draw; mu overrides the random eigenvalues when given.
// Requires n >= 3, matching the dimension floor of the rigidity statement.
SyntheticPoint synthetic_point(
    std::uint64_t seed, int n,
    const std::optional<std::vector<double>>& mu = std::nullopt);

}  // namespace bochnerlab::synth

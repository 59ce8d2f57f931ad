#pragma once

#include "bochnerlab/manifold.hpp"
#include "bochnerlab/tensor.hpp"

namespace bochnerlab::bochner {

// weights of the Ricci and scalar parts in the auxiliary tensor q:
//   q = ricci/(2(n+2)) - scalar * g/(8(n+1)(n+2))
inline double ricci_weight(int n) { return 1.0 / (2.0 * (n + 2)); }
inline double scalar_weight(int n) { return 1.0 / (8.0 * (n + 1) * (n + 2)); }

// the auxiliary (0,2) tensor entering the curvature decomposition
tensor::PointTensor q_tensor(const tensor::PointTensor& ricci, double scalar,
                             const tensor::PointTensor& g, int n);

// The algebraic curvature-type tensor built from a symmetric hybrid (0,2)
// tensor q.  Ten terms; `term_mask` keeps a subset for testing, bit k
// selecting term k, with the default keeping all of them.
tensor::PointTensor phi(const tensor::PointTensor& q, const tensor::PointTensor& g,
                        const tensor::PointTensor& j, unsigned term_mask = 0x3ffu);

// Ricci-style contraction of a (0,4) tensor: out(x,y) = g^kl t(x,k,l,y)
tensor::PointTensor ricci_of(const tensor::PointTensor& t4,
                             const tensor::PointTensor& g_inv);

// largest absolute violations of the curvature prerequisites at one point
struct IdentityResiduals {
  double hybrid_ricci = 0.0;    // ricci(Jx,Jy) = ricci(x,y)
  double trace_identity = 0.0;  // ricci rebuilt from the 10-term contraction
  double ah1 = 0.0;             // riemann(x,y,Jz,Ju) = riemann(x,y,z,u)
  double q_hybrid = 0.0;
  double q_symmetric = 0.0;
};

struct BochnerPackage {
  tensor::PointTensor q;      // (0,2)
  tensor::PointTensor phi_q;  // (0,4)
  tensor::PointTensor b;      // (0,4) curvature minus phi_q
  double b_norm = 0.0;
  double riemann_norm = 0.0;
  IdentityResiduals residuals;
};

// full pointwise pipeline; requires an almost Hermitian package (even dim, J)
BochnerPackage bochner_package(const manifold::CurvaturePackage& pkg);

IdentityResiduals identity_residuals(const manifold::CurvaturePackage& pkg,
                                     const tensor::PointTensor& q);

// covariant derivative of q assembled from the package derivatives
tensor::PointTensor nabla_q_tensor(const tensor::PointTensor& nabla_ricci,
                                   const tensor::PointTensor& nabla_scalar,
                                   const tensor::PointTensor& g, int n);

}  // namespace bochnerlab::bochner

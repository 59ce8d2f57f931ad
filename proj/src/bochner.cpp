#include "bochnerlab/bochner.hpp"

#include <cmath>

namespace bochnerlab::bochner {

using tensor::PointTensor;
using tensor::Variance;

PointTensor q_tensor(const tensor::PointTensor& ricci, double scalar,
                     const tensor::PointTensor& g, int n) {
  if (n < 1) throw std::invalid_argument("q_tensor needs n >= 1");
  PointTensor q = ricci * ricci_weight(n);
  q -= g * (scalar * scalar_weight(n));
  return q;
}

PointTensor phi(const tensor::PointTensor& q, const tensor::PointTensor& g,
                const tensor::PointTensor& j, unsigned term_mask) {
  const int d = g.dim();
  if (q.dim() != d || j.dim() != d) throw std::invalid_argument("dimension mismatch");

  // pairings with J in the second argument: gj(a,b) = g(e_a, J e_b)
  PointTensor gj(d, {Variance::Co, Variance::Co});
  PointTensor qj(d, {Variance::Co, Variance::Co});
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double gacc = 0.0, qacc = 0.0;
      for (int c = 0; c < d; ++c) {
        gacc += g(a, c) * j(c, b);
        qacc += q(a, c) * j(c, b);
      }
      gj(a, b) = gacc;
      qj(a, b) = qacc;
    }

  PointTensor out(d, {Variance::Co, Variance::Co, Variance::Co, Variance::Co});
  const bool t[10] = {
      static_cast<bool>(term_mask & 1u),   static_cast<bool>(term_mask & 2u),
      static_cast<bool>(term_mask & 4u),   static_cast<bool>(term_mask & 8u),
      static_cast<bool>(term_mask & 16u),  static_cast<bool>(term_mask & 32u),
      static_cast<bool>(term_mask & 64u),  static_cast<bool>(term_mask & 128u),
      static_cast<bool>(term_mask & 256u), static_cast<bool>(term_mask & 512u)};

  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int u = 0; u < d; ++u) {
          double acc = 0.0;
          if (t[0]) acc += g(x, u) * q(y, z);
          if (t[1]) acc -= g(x, z) * q(y, u);
          if (t[2]) acc += g(y, z) * q(x, u);
          if (t[3]) acc -= g(y, u) * q(x, z);
          if (t[4]) acc += gj(x, u) * qj(y, z);
          if (t[5]) acc -= gj(x, z) * qj(y, u);
          if (t[6]) acc -= 2.0 * gj(x, y) * qj(z, u);
          if (t[7]) acc += gj(y, z) * qj(x, u);
          if (t[8]) acc -= gj(y, u) * qj(x, z);
          if (t[9]) acc -= 2.0 * gj(z, u) * qj(x, y);
          out(x, y, z, u) = acc;
        }
  return out;
}

PointTensor ricci_of(const tensor::PointTensor& t4, const tensor::PointTensor& g_inv) {
  if (t4.degree() != 4) throw std::invalid_argument("ricci_of needs a degree-4 tensor");
  return contract(t4, 1, 2, &g_inv);
}

IdentityResiduals identity_residuals(const manifold::CurvaturePackage& pkg,
                                     const tensor::PointTensor& q) {
  if (!pkg.j) throw std::invalid_argument("identity residuals need an almost complex structure");
  const auto& j = *pkg.j;
  IdentityResiduals r;
  r.hybrid_ricci = tensor::defect_hybrid(pkg.ricci, j);
  r.ah1 = tensor::defect_hybrid_34(pkg.riemann, j);
  r.q_hybrid = tensor::defect_hybrid(q, j);
  r.q_symmetric = tensor::defect_sym_pair(q, 0, 1);
  PointTensor rebuilt = ricci_of(phi(q, pkg.g, j), pkg.g_inv);
  r.trace_identity = tensor::max_norm(rebuilt - pkg.ricci);
  return r;
}

BochnerPackage bochner_package(const manifold::CurvaturePackage& pkg) {
  if (!pkg.j || pkg.n < 1)
    throw std::invalid_argument("curvature decomposition needs an almost Hermitian chart");
  BochnerPackage out;
  out.q = q_tensor(pkg.ricci, pkg.scalar, pkg.g, pkg.n);
  out.phi_q = phi(out.q, pkg.g, *pkg.j);
  out.b = pkg.riemann - out.phi_q;
  out.b_norm = tensor::max_norm(out.b);
  out.riemann_norm = tensor::max_norm(pkg.riemann);
  out.residuals = identity_residuals(pkg, out.q);
  return out;
}

PointTensor nabla_q_tensor(const tensor::PointTensor& nabla_ricci,
                           const tensor::PointTensor& nabla_scalar,
                           const tensor::PointTensor& g, int n) {
  const int d = g.dim();
  PointTensor out(d, {Variance::Co, Variance::Co, Variance::Co});
  const double w1 = ricci_weight(n);
  const double w2 = scalar_weight(n);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out(a, i, j) = w1 * nabla_ricci(a, i, j) - w2 * nabla_scalar(a) * g(i, j);
  return out;
}

}  // namespace bochnerlab::bochner

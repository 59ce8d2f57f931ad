#include "bochnerlab/classify.hpp"

#include <cmath>
#include <stdexcept>

#include "bochnerlab/bochner.hpp"

namespace bochnerlab::verify {

Classification classify(const manifold::ChartManifold& m,
                        std::span<const double> point, double tol) {
  if (!m.has_j())
    throw std::invalid_argument("classification needs an almost complex structure");
  return classify(manifold::curvature_package(m, point), tol);
}

Classification classify(const manifold::CurvaturePackage& pkg, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classification tol must be positive");
  if (!pkg.j || pkg.dim % 2 != 0)
    throw std::invalid_argument("classification needs an even-dimensional chart");

  auto bp = bochner::bochner_package(pkg);

  Classification out;
  out.n = pkg.n;
  out.tol = tol;
  out.b_norm = bp.b_norm;
  out.r_norm = bp.riemann_norm;
  out.nabla_j_norm = tensor::max_norm(*pkg.nabla_j);
  out.g_scale = tensor::max_norm(pkg.g);

  out.bochner0 = out.b_norm <= tol * (1.0 + out.r_norm);
  out.kahler = out.nabla_j_norm <= tol;
  out.flat = out.r_norm <= tol * (1.0 + out.g_scale * out.g_scale);

  if (pkg.n <= 2) {
    out.verdict = "not-applicable";
    out.warnings.push_back("theorem requires n > 2, got n = " +
                           std::to_string(pkg.n));
    return out;
  }
  out.verdict = (out.bochner0 && !out.kahler && !out.flat) ? "violation-candidate"
                                                           : "consistent";
  return out;
}

ScanReport neighborhood_scan(const manifold::ChartManifold& m,
                             std::span<const double> center, double radius,
                             int grid_per_axis) {
  const int dim = m.dim;
  if (static_cast<int>(center.size()) != dim)
    throw std::invalid_argument("scan center has wrong dimension");
  if (grid_per_axis < 1) throw std::invalid_argument("scan grid must be >= 1");
  if (!(radius >= 0.0)) throw std::invalid_argument("scan radius must be >= 0");

  ScanReport out;
  std::vector<int> idx(dim, 0);
  std::vector<double> p(dim);
  bool done = false;
  while (!done) {
    for (int a = 0; a < dim; ++a) {
      double off = grid_per_axis == 1
                       ? 0.0
                       : -radius + 2.0 * radius * idx[a] / (grid_per_axis - 1);
      p[a] = center[a] + off;
    }
    ++out.requested;

    bool inside = true;
    if (!m.domain.empty()) {
      for (int a = 0; a < dim && inside; ++a)
        inside = p[a] >= m.domain[a].first && p[a] <= m.domain[a].second;
    }
    if (inside) {
      auto pkg = manifold::curvature_package(m, p);
      double r = tensor::max_norm(pkg.riemann);
      if (out.sampled == 0 || r > out.max_r_norm) {
        out.max_r_norm = r;
        out.worst_point = p;
      }
      ++out.sampled;
    } else {
      ++out.clipped;
    }

    done = true;
    for (int a = 0; a < dim; ++a) {
      if (++idx[a] < grid_per_axis) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
  }
  return out;
}

}  // namespace bochnerlab::verify

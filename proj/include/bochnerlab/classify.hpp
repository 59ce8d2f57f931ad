#pragma once

#include <span>
#include <string>
#include <vector>

#include "bochnerlab/manifold.hpp"

namespace bochnerlab::verify {

// Pointwise test of the rigidity statement: a vanishing difference tensor
// together with a structure that is not Kaehlerian at the point must come
// with vanishing curvature.  A point exhibiting the first two without the
// third would contradict the statement, hence "violation-candidate".
struct Classification {
  int n = 0;
  double tol = 0.0;
  bool bochner0 = false;  // |B| <= tol * (1 + |R|)
  bool kahler = false;    // |nabla J| <= tol
  bool flat = false;      // |R| <= tol * (1 + |g|^2)
  double b_norm = 0.0;
  double r_norm = 0.0;
  double nabla_j_norm = 0.0;
  double g_scale = 0.0;   // largest metric component
  std::string verdict;    // "consistent", "violation-candidate", "not-applicable"
  std::vector<std::string> warnings;
};

Classification classify(const manifold::ChartManifold& m,
                        std::span<const double> point, double tol);

// same test on an already computed package (the chart must carry J)
Classification classify(const manifold::CurvaturePackage& pkg, double tol);

// Sampled stand-in for the neighbourhood statement: largest curvature norm
// over a grid of side 2*radius around the center, clipped to the chart
// domain when the chart declares bounds.
struct ScanReport {
  int requested = 0;  // grid nodes before clipping
  int sampled = 0;
  int clipped = 0;
  double max_r_norm = 0.0;
  std::vector<double> worst_point;
};

ScanReport neighborhood_scan(const manifold::ChartManifold& m,
                             std::span<const double> center, double radius,
                             int grid_per_axis);

}  // namespace bochnerlab::verify

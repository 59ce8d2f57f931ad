#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bochnerlab/expression.hpp"
#include "bochnerlab/jet_linalg.hpp"
#include "bochnerlab/tensor.hpp"

namespace bochnerlab::manifold {

struct ManifoldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chart data given through an isometric embedding: the chart maps into
// R^ambient_dim, the metric is the pullback of the flat ambient metric, and
// the almost complex structure is the pullback of an ambient endomorphism
// field (given as expressions in the ambient coordinates).
struct EmbeddedStructure {
  int ambient_dim = 0;
  std::vector<expr::Expression> map;
  std::vector<std::vector<expr::Expression>> ambient_endo;
};

// A manifold presented on a single coordinate chart.  Either `metric` (and
// optionally `j`) hold component expressions in the chart coordinates, or
// `embedded` supplies both through a pullback.
struct ChartManifold {
  std::string name;
  int dim = 0;
  std::vector<std::vector<expr::Expression>> metric;
  std::vector<std::vector<expr::Expression>> j;
  std::optional<EmbeddedStructure> embedded;
  std::vector<double> default_point;
  // optional per-axis chart bounds used to clip scans; empty means unbounded
  std::vector<std::pair<double, double>> domain;

  bool has_j() const { return embedded.has_value() || !j.empty(); }
};

// pointwise checks of the structure data
struct StructureDiagnostics {
  int dim = 0;
  double metric_symmetry = 0.0;     // max |g_ij - g_ji|
  double metric_min_eigenvalue = 0.0;
  double j_squared = 0.0;           // max |(J^2 + I)_ij|
  double compatibility = 0.0;       // max |g(Jx,Jy) - g(x,y)| on basis pairs
  bool has_j = false;
  bool passed = false;
};

StructureDiagnostics validate(const ChartManifold& m, std::span<const double> point,
                              double tol);

// Levi-Civita connection coefficients as a (1,2) tensor, slot 0 contravariant
tensor::PointTensor christoffel(const ChartManifold& m, std::span<const double> point);

// Everything the curvature analysis needs at one point.  All derivative slots
// come first: nabla_riemann(a,i,j,k,l) is the covariant derivative in the
// e_a direction of riemann(i,j,k,l), and likewise for the others.
struct CurvaturePackage {
  std::vector<double> point;
  int dim = 0;
  int n = 0;  // dim/2 when dim is even, else 0

  tensor::PointTensor g;        // (0,2)
  tensor::PointTensor g_inv;    // (2,0)
  tensor::PointTensor gamma;    // (1,2)
  tensor::PointTensor riemann;  // (0,4)
  tensor::PointTensor ricci;    // (0,2)
  double scalar = 0.0;

  tensor::PointTensor nabla_riemann;  // (0,5)
  tensor::PointTensor nabla_ricci;    // (0,3)
  tensor::PointTensor nabla_scalar;   // (0,1)
  std::optional<tensor::PointTensor> nabla_q;  // (0,3), even dim only

  std::optional<tensor::PointTensor> j;        // (1,1)
  std::optional<tensor::PointTensor> nabla_j;  // (0,3): direction, arg, lowered
};

CurvaturePackage curvature_package(const ChartManifold& m,
                                   std::span<const double> point);

// largest absolute component of the cyclic sum of nabla_riemann over the
// direction slot and the first two curvature slots
double second_bianchi_defect(const CurvaturePackage& pkg);

// chart zoo -----------------------------------------------------------------

struct ZooParams {
  int n = 3;           // complex dimension for the Hermitian families
  int dim = 3;         // real dimension for round_sphere_diag
  double radius = 1.0; // sphere radius for round_sphere_diag
};

// names: flat_cn, fubini_study_cpn, s6_nearly_kahler, flat_twisted_j,
// round_sphere_diag
ChartManifold make_zoo(const std::string& name, const ZooParams& params = {});
std::vector<std::string> zoo_names();

// deterministic sample point inside the chart domain near the default point
std::vector<double> random_domain_point(const ChartManifold& m, std::uint64_t seed);

// structure constants of the seven-dimensional cross product, built from a
// doubling of the quaternions; entry {a,b,c} means e_a x e_b has coefficient
// sign on e_c
struct CrossEntry {
  int a, b, c, sign;
};
std::vector<CrossEntry> cross_product_structure_constants();

}  // namespace bochnerlab::manifold

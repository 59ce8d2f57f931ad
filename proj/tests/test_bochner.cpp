#include <cmath>
#include <random>

#include "bochnerlab/bochner.hpp"
#include "bochnerlab/manifold.hpp"
#include "doctest.h"

using namespace bochnerlab;
using tensor::PointTensor;
using tensor::Variance;

namespace {

PointTensor delta_metric(int d) {
  PointTensor g(d, {Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i) g(i, i) = 1.0;
  return g;
}

PointTensor delta_inverse(int d) {
  PointTensor g(d, {Variance::Contra, Variance::Contra});
  for (int i = 0; i < d; ++i) g(i, i) = 1.0;
  return g;
}

PointTensor block_j(int d) {
  PointTensor j(d, {Variance::Contra, Variance::Co});
  const int n = d / 2;
  for (int k = 0; k < n; ++k) {
    j(k + n, k) = 1.0;
    j(k, k + n) = -1.0;
  }
  return j;
}

// random symmetric J-invariant (0,2) tensor
PointTensor random_hybrid(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PointTensor s(d, {Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = u(rng);
      s(i, j) = v;
      s(j, i) = v;
    }
  PointTensor jm = block_j(d);
  PointTensor out(d, {Variance::Co, Variance::Co});
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double jj = 0.0;
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) jj += jm(p, a) * jm(q, b) * s(p, q);
      out(a, b) = 0.5 * (s(a, b) + jj);
    }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("bochner");

TEST_CASE("q combines ricci and scalar parts with the right weights") {
  const int n = 4, d = 8;
  PointTensor g = delta_metric(d);
  PointTensor q = bochner::q_tensor(g, 8.0, g, n);
  // ricci = g, scalar = 8: q = (1/12 - 8/240) g = (1/20) g
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      CHECK(q(i, j) == doctest::Approx((i == j ? 0.05 : 0.0)).epsilon(1e-15));
}

TEST_CASE("worked components of the ten-term expansion with q = g") {
  const int n = 3, d = 6;
  PointTensor g = delta_metric(d);
  PointTensor j = block_j(d);
  PointTensor p = bochner::phi(g, g, j);

  // plain orthonormal pair
  CHECK(p(0, 1, 1, 0) == doctest::Approx(2.0));
  // holomorphic pair x, Jx: J e1 = e4 (zero-based 0 -> 3)
  CHECK(p(0, 3, 3, 0) == doctest::Approx(8.0));
  // mixed components vanish for this q
  CHECK(p(0, 1, 2, 3) == doctest::Approx(0.0));
}

TEST_CASE("term mask splits the expansion linearly") {
  std::mt19937_64 rng(41);
  const int d = 6;
  PointTensor g = delta_metric(d);
  PointTensor j = block_j(d);
  PointTensor q = random_hybrid(d, rng);

  PointTensor whole = bochner::phi(q, g, j);
  PointTensor sum(d, {Variance::Co, Variance::Co, Variance::Co, Variance::Co});
  for (unsigned k = 0; k < 10; ++k) sum += bochner::phi(q, g, j, 1u << k);
  CHECK(tensor::max_norm(whole - sum) <= 1e-14);
}

TEST_CASE("the expansion has all curvature-type symmetries for hybrid q") {
  std::mt19937_64 rng(43);
  const int d = 6;
  PointTensor g = delta_metric(d);
  PointTensor j = block_j(d);
  for (int trial = 0; trial < 5; ++trial) {
    PointTensor q = random_hybrid(d, rng);
    PointTensor p = bochner::phi(q, g, j);
    CHECK(tensor::defect_skew_pair(p, 0, 1) <= 1e-13);
    CHECK(tensor::defect_skew_pair(p, 2, 3) <= 1e-13);
    CHECK(tensor::defect_pair_exchange(p) <= 1e-13);
    CHECK(tensor::defect_cyclic_012(p) <= 1e-13);
    CHECK(tensor::defect_hybrid_34(p, j) <= 1e-13);
  }
}

TEST_CASE("ricci contraction inverts the expansion on hybrid data") {
  // 50 random draws: ricci_of(phi(q_tensor(rho, tau, g))) must return rho
  // exactly when tau is the metric trace of rho
  std::mt19937_64 rng(47);
  const int n = 3, d = 6;
  PointTensor g = delta_metric(d);
  PointTensor ginv = delta_inverse(d);
  PointTensor j = block_j(d);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    PointTensor rho = random_hybrid(d, rng);
    double tau = 0.0;
    for (int i = 0; i < d; ++i) tau += rho(i, i);
    PointTensor q = bochner::q_tensor(rho, tau, g, n);
    PointTensor back = bochner::ricci_of(bochner::phi(q, g, j), ginv);
    worst = std::max(worst, tensor::max_norm(back - rho));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("mismatched scalar trace shows up in the rebuilt ricci") {
  std::mt19937_64 rng(53);
  const int n = 3, d = 6;
  PointTensor g = delta_metric(d);
  PointTensor ginv = delta_inverse(d);
  PointTensor j = block_j(d);
  PointTensor rho = random_hybrid(d, rng);
  double tau = 0.0;
  for (int i = 0; i < d; ++i) tau += rho(i, i);
  PointTensor q = bochner::q_tensor(rho, tau + 1.0, g, n);
  PointTensor back = bochner::ricci_of(bochner::phi(q, g, j), ginv);
  // the defect is (tr rho - tau) g / (2(n+2)) = -g/10 here
  CHECK(tensor::max_norm(back - rho) == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("fubini-study curvature is exactly the expansion of its q") {
  auto m = manifold::make_zoo("fubini_study_cpn", {.n = 3});
  auto pt = manifold::random_domain_point(m, 3);
  auto pkg = manifold::curvature_package(m, pt);
  auto bp = bochner::bochner_package(pkg);

  CHECK(bp.riemann_norm > 0.5);
  CHECK(bp.b_norm <= 1e-10 * (1.0 + bp.riemann_norm));
  CHECK(bp.residuals.hybrid_ricci <= 1e-9);
  CHECK(bp.residuals.trace_identity <= 1e-9);
  CHECK(bp.residuals.ah1 <= 1e-9);
  CHECK(bp.residuals.q_hybrid <= 1e-10);
  CHECK(bp.residuals.q_symmetric <= 1e-10);
}

TEST_CASE("six-sphere curvature is far from the expansion of its q") {
  auto m = manifold::make_zoo("s6_nearly_kahler");
  auto pkg = manifold::curvature_package(m, m.default_point);
  auto bp = bochner::bochner_package(pkg);
  CHECK(bp.b_norm / bp.riemann_norm > 1e-3);
  // constant curvature is not in the first Gray class: the slot-34 rotation
  // identity must fail visibly
  CHECK(bp.residuals.ah1 > 0.1);
}

TEST_CASE("flat charts give identically zero decompositions") {
  for (const char* name : {"flat_cn", "flat_twisted_j"}) {
    auto m = manifold::make_zoo(name, {.n = 3});
    auto pkg = manifold::curvature_package(m, m.default_point);
    auto bp = bochner::bochner_package(pkg);
    CHECK(bp.b_norm == 0.0);
    CHECK(bp.riemann_norm == 0.0);
    CHECK(bp.residuals.hybrid_ricci == 0.0);
    CHECK(bp.residuals.trace_identity == 0.0);
    CHECK(bp.residuals.ah1 == 0.0);
  }
}

TEST_CASE("derivative of q follows the component weights") {
  auto m = manifold::make_zoo("fubini_study_cpn", {.n = 2});
  std::vector<double> pt = {0.1, 0.2, -0.15, 0.05};
  auto pkg = manifold::curvature_package(m, pt);
  REQUIRE(pkg.nabla_q.has_value());
  const auto& dq = *pkg.nabla_q;
  const int d = pkg.dim;
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double want = pkg.nabla_ricci(a, i, j) / (2.0 * (pkg.n + 2)) -
                      pkg.nabla_scalar(a) * pkg.g(i, j) /
                          (8.0 * (pkg.n + 1) * (pkg.n + 2));
        CHECK(dq(a, i, j) == doctest::Approx(want).epsilon(1e-13));
      }
}

TEST_CASE("package construction rejects charts without J") {
  auto m = manifold::make_zoo("round_sphere_diag", {.dim = 3});
  auto pkg = manifold::curvature_package(m, m.default_point);
  CHECK_THROWS_AS((void)bochner::bochner_package(pkg), std::invalid_argument);
}

TEST_SUITE_END();

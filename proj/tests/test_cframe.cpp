#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bochnerlab/bochner.hpp"
#include "bochnerlab/cframe.hpp"
#include "bochnerlab/manifold.hpp"
#include "bochnerlab/tensor.hpp"
#include "doctest.h"

using namespace bochnerlab;
using tensor::PointTensor;
using tensor::Variance;

namespace {

using Mat = std::vector<std::vector<double>>;

Mat mat_zero(int d) { return Mat(d, std::vector<double>(d, 0.0)); }

Mat standard_j0(int n) {
  Mat m = mat_zero(2 * n);
  for (int k = 0; k < n; ++k) {
    m[k + n][k] = 1.0;
    m[k][k + n] = -1.0;
  }
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const int d = static_cast<int>(a.size());
  Mat out = mat_zero(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

Mat mat_inverse(Mat a) {
  const int d = static_cast<int>(a.size());
  Mat inv = mat_zero(d);
  for (int i = 0; i < d; ++i) inv[i][i] = 1.0;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    double p = a[c][c];
    for (int j = 0; j < d; ++j) {
      a[c][j] /= p;
      inv[c][j] /= p;
    }
    for (int r = 0; r < d; ++r) {
      if (r == c) continue;
      double f = a[r][c];
      for (int j = 0; j < d; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// compatible pair g = P^T P, J = P^{-1} J0 P for a random well conditioned P
void random_structure(std::mt19937_64& rng, int n, PointTensor& g, PointTensor& j) {
  const int d = 2 * n;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat p = mat_zero(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) p[r][c] = (r == c ? 1.0 : 0.0) + 0.25 * u(rng);
  Mat pinv = mat_inverse(p);
  Mat jm = mat_mul(pinv, mat_mul(standard_j0(n), p));

  g = PointTensor(d, {Variance::Co, Variance::Co});
  j = PointTensor(d, {Variance::Contra, Variance::Co});
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      double acc = 0.0;
      for (int k = 0; k < d; ++k) acc += p[k][r] * p[k][c];
      g(r, c) = acc;
      j(r, c) = jm[r][c];
    }
}

void flat_structure(int n, PointTensor& g, PointTensor& j) {
  const int d = 2 * n;
  g = PointTensor(d, {Variance::Co, Variance::Co});
  j = PointTensor(d, {Variance::Contra, Variance::Co});
  Mat j0 = standard_j0(n);
  for (int r = 0; r < d; ++r) {
    g(r, r) = 1.0;
    for (int c = 0; c < d; ++c) j(r, c) = j0[r][c];
  }
}

// adds mu * (g v)(g v)^T to q
void add_rank_one(PointTensor& q, const PointTensor& g, const std::vector<double>& v,
                  double mu) {
  const int d = q.dim();
  std::vector<double> gv(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) gv[i] += g(i, k) * v[k];
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) q(i, k) += mu * gv[i] * gv[k];
}

// random unitary n x n through Gram-Schmidt on a complex matrix
std::vector<std::vector<std::complex<double>>> random_unitary(std::mt19937_64& rng,
                                                              int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<std::complex<double>>> cols(
      n, std::vector<std::complex<double>>(n));
  for (auto& col : cols)
    for (auto& z : col) z = std::complex<double>(u(rng), u(rng));
  for (int k = 0; k < n; ++k) {
    for (int jj = 0; jj < k; ++jj) {
      std::complex<double> c{0.0, 0.0};
      for (int i = 0; i < n; ++i) c += cols[k][i] * std::conj(cols[jj][i]);
      for (int i = 0; i < n; ++i) cols[k][i] -= c * cols[jj][i];
    }
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) norm2 += std::norm(cols[k][i]);
    for (int i = 0; i < n; ++i) cols[k][i] /= std::sqrt(norm2);
  }
  return cols;
}

// real vector of the complex combination sum_a w_a e_a with i e_a = Je_a,
// together with its J image
void complex_combination(const cframe::AdaptedFrame& f,
                         const std::vector<std::complex<double>>& w,
                         std::vector<double>& v, std::vector<double>& jv) {
  v.assign(f.dim, 0.0);
  jv.assign(f.dim, 0.0);
  for (int a = 0; a < f.n; ++a)
    for (int i = 0; i < f.dim; ++i) {
      v[i] += w[a].real() * f.e[a][i] + w[a].imag() * f.je[a][i];
      jv[i] += w[a].real() * f.je[a][i] - w[a].imag() * f.e[a][i];
    }
}

}  // namespace

TEST_SUITE("cframe") {

TEST_CASE("flat structure yields the coordinate frame") {
  PointTensor g, j;
  flat_structure(3, g, j);
  auto f = cframe::adapted_frame(g, j);
  REQUIRE(f.n == 3);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 6; ++i) {
      CHECK(f.e[k][i] == doctest::Approx(i == k ? 1.0 : 0.0).epsilon(1e-14));
      CHECK(f.je[k][i] == doctest::Approx(i == k + 3 ? 1.0 : 0.0).epsilon(1e-14));
    }
  CHECK(cframe::frame_gram_defect(f, g) <= 1e-14);
  CHECK(cframe::frame_j_defect(f, j) <= 1e-14);
}

TEST_CASE("generic compatible pairs admit adapted frames") {
  std::mt19937_64 rng(91u);
  for (int trial = 0; trial < 24; ++trial) {
    int n = 1 + trial % 4;
    PointTensor g, j;
    random_structure(rng, n, g, j);
    auto f = cframe::adapted_frame(g, j);
    CHECK(f.n == n);
    CHECK(cframe::frame_gram_defect(f, g) <= 1e-10);
    CHECK(cframe::frame_j_defect(f, j) <= 1e-10);
  }
}

TEST_CASE("a complex rotation of the spectrum is recovered") {
  PointTensor g, j;
  flat_structure(3, g, j);
  auto base = cframe::adapted_frame(g, j);

  std::mt19937_64 rng(137u);
  auto u = random_unitary(rng, 3);
  const std::array<double, 3> mu = {5.0, 2.0, -1.0};

  PointTensor q(6, {Variance::Co, Variance::Co});
  for (int k = 0; k < 3; ++k) {
    std::vector<double> v, jv;
    complex_combination(base, u[k], v, jv);
    add_rank_one(q, g, v, mu[k]);
    add_rank_one(q, g, jv, mu[k]);
  }

  auto f = cframe::diagonalize_q(q, g, j, base, 1e-10);
  REQUIRE(f.mu.size() == 3);
  CHECK(f.mu[0] == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(f.mu[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(f.mu[2] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(f.mu_cluster == std::vector<int>{0, 1, 2});
  CHECK(cframe::frame_q_defect(f, q) <= 1e-9);
  CHECK(cframe::frame_gram_defect(f, g) <= 1e-10);
  CHECK(cframe::frame_j_defect(f, j) <= 1e-10);
}

TEST_CASE("spectra survive a curved metric round trip") {
  std::mt19937_64 rng(7812u);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + trial % 3;
    PointTensor g, j;
    random_structure(rng, n, g, j);
    auto base = cframe::adapted_frame(g, j);
    auto u = random_unitary(rng, n);

    std::uniform_real_distribution<double> mudist(-3.0, 3.0);
    std::vector<double> mu(n);
    for (double& m : mu) m = mudist(rng);

    PointTensor q(2 * n, {Variance::Co, Variance::Co});
    for (int k = 0; k < n; ++k) {
      std::vector<double> v, jv;
      complex_combination(base, u[k], v, jv);
      add_rank_one(q, g, v, mu[k]);
      add_rank_one(q, g, jv, mu[k]);
    }

    auto f = cframe::diagonalize_q(q, g, j, base, 1e-8);
    std::sort(mu.begin(), mu.end(), std::greater<double>());
    for (int k = 0; k < n; ++k)
      CHECK(std::abs(f.mu[k] - mu[k]) <= 1e-8 * (1.0 + std::abs(mu[k])));
    CHECK(cframe::frame_q_defect(f, q) <= 1e-7);
    CHECK(cframe::frame_gram_defect(f, g) <= 1e-9);
  }
}

TEST_CASE("repeated eigenvalues are clustered") {
  PointTensor g, j;
  flat_structure(3, g, j);
  auto base = cframe::adapted_frame(g, j);
  std::mt19937_64 rng(55u);
  auto u = random_unitary(rng, 3);
  const std::array<double, 3> mu = {3.0, 3.0, 1.0};

  PointTensor q(6, {Variance::Co, Variance::Co});
  for (int k = 0; k < 3; ++k) {
    std::vector<double> v, jv;
    complex_combination(base, u[k], v, jv);
    add_rank_one(q, g, v, mu[k]);
    add_rank_one(q, g, jv, mu[k]);
  }

  auto f = cframe::diagonalize_q(q, g, j, base, 1e-10);
  CHECK(f.mu[0] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(f.mu[1] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(f.mu[2] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f.mu_cluster == std::vector<int>{0, 0, 1});
  CHECK(cframe::frame_q_defect(f, q) <= 1e-9);
}

TEST_CASE("asymmetric or non hybrid forms are rejected") {
  PointTensor g, j;
  flat_structure(2, g, j);
  auto base = cframe::adapted_frame(g, j);

  PointTensor asym(4, {Variance::Co, Variance::Co});
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(cframe::diagonalize_q(asym, g, j, base, 1e-10),
                  std::invalid_argument);

  PointTensor nonhybrid(4, {Variance::Co, Variance::Co});
  for (int i = 0; i < 4; ++i) nonhybrid(i, i) = 1.0 + i;
  CHECK_THROWS_AS(cframe::diagonalize_q(nonhybrid, g, j, base, 1e-10),
                  std::invalid_argument);
}

TEST_CASE("complexified frame satisfies the standard pairings") {
  std::mt19937_64 rng(4242u);
  PointTensor g, j;
  random_structure(rng, 3, g, j);
  auto base = cframe::adapted_frame(g, j);
  auto u = random_unitary(rng, 3);
  const std::array<double, 3> mu = {1.5, 0.25, -2.0};

  PointTensor q(6, {Variance::Co, Variance::Co});
  for (int k = 0; k < 3; ++k) {
    std::vector<double> v, jv;
    complex_combination(base, u[k], v, jv);
    add_rank_one(q, g, v, mu[k]);
    add_rank_one(q, g, jv, mu[k]);
  }
  auto f = cframe::diagonalize_q(q, g, j, base, 1e-9);
  cframe::complexify(f);
  REQUIRE(f.z.size() == 3);

  for (int a = 0; a < 3; ++a) {
    auto jz = tensor::apply_endo(j, f.z[a]);
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
      std::complex<double> want = std::complex<double>(0.0, 1.0) * f.z[a].v[i];
      worst = std::max(worst, std::abs(jz.v[i] - want));
    }
    CHECK(worst <= 1e-10);
  }

  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      std::array<tensor::ComplexVector, 2> mixed = {f.z[a], f.zbar[b]};
      std::array<tensor::ComplexVector, 2> holo = {f.z[a], f.z[b]};
      auto gm = tensor::complex_eval(g, mixed);
      auto gh = tensor::complex_eval(g, holo);
      CHECK(std::abs(gm - (a == b ? 2.0 : 0.0)) <= 1e-9);
      CHECK(std::abs(gh) <= 1e-9);
      auto qm = tensor::complex_eval(q, mixed);
      auto qh = tensor::complex_eval(q, holo);
      CHECK(std::abs(qm - (a == b ? 2.0 * f.mu[a] : 0.0)) <= 1e-8);
      CHECK(std::abs(qh) <= 1e-8);
    }
}

TEST_CASE("einstein chart produces a single eigenvalue cluster") {
  auto m = manifold::make_zoo("fubini_study_cpn");
  auto pkg = manifold::curvature_package(m, m.default_point);
  REQUIRE(pkg.j.has_value());
  auto q = bochner::q_tensor(pkg.ricci, pkg.scalar, pkg.g, pkg.n);
  auto base = cframe::adapted_frame(pkg.g, *pkg.j);
  auto f = cframe::diagonalize_q(q, pkg.g, *pkg.j, base, 1e-8);
  REQUIRE(f.mu.size() == 3);
  for (int k = 1; k < 3; ++k) CHECK(std::abs(f.mu[k] - f.mu[0]) <= 1e-8);
  CHECK(f.mu_cluster == std::vector<int>{0, 0, 0});
  CHECK(cframe::frame_q_defect(f, q) <= 1e-8);
  cframe::complexify(f);
  std::array<tensor::ComplexVector, 2> pair = {f.z[0], f.zbar[0]};
  CHECK(std::abs(tensor::complex_eval(q, pair) - 2.0 * f.mu[0]) <= 1e-8);
}

TEST_CASE("shape errors are reported") {
  PointTensor g3(3, {Variance::Co, Variance::Co});
  PointTensor j3(3, {Variance::Contra, Variance::Co});
  for (int i = 0; i < 3; ++i) g3(i, i) = 1.0;
  CHECK_THROWS_AS(cframe::adapted_frame(g3, j3), cframe::FrameError);

  PointTensor g, j;
  flat_structure(2, g, j);
  PointTensor vec(4, {Variance::Co});
  CHECK_THROWS_AS(cframe::adapted_frame(g, vec), std::invalid_argument);

  auto f = cframe::adapted_frame(g, j);
  PointTensor q(4, {Variance::Co, Variance::Co});
  CHECK_THROWS_AS(cframe::frame_q_defect(f, q), cframe::FrameError);
}

}  // TEST_SUITE

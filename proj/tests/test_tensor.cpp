#include <complex>
#include <random>

#include "bochnerlab/tensor.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace bochnerlab::tensor;

namespace {

PointTensor identity_metric(int d) {
  PointTensor g(d, {Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i) g(i, i) = 1.0;
  return g;
}

PointTensor standard_j(int d) {
  // block rotation pairing e_k with e_{k+n}
  PointTensor j(d, {Variance::Contra, Variance::Co});
  const int n = d / 2;
  for (int k = 0; k < n; ++k) {
    j(k + n, k) = 1.0;
    j(k, k + n) = -1.0;
  }
  return j;
}

}  // namespace

TEST_SUITE_BEGIN("tensor");

TEST_CASE("element access is row-major with arity checking") {
  PointTensor t(3, {Variance::Co, Variance::Co});
  t(1, 2) = 5.0;
  CHECK(t(1, 2) == 5.0);
  CHECK(t(2, 1) == 0.0);
  int idx[2] = {1, 2};
  CHECK(t.at(std::span<const int>(idx, 2)) == 5.0);
  CHECK_THROWS_AS((void)t(1, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)t(3, 0), std::out_of_range);
}

TEST_CASE("mixed-variance contraction is a plain trace") {
  PointTensor m(3, {Variance::Contra, Variance::Co});
  m(0, 0) = 1.0;
  m(1, 1) = 2.0;
  m(2, 2) = 4.0;
  m(0, 2) = 9.0;
  PointTensor tr = contract(m, 0, 1);
  CHECK(tr.degree() == 0);
  CHECK(tr.data()[0] == 7.0);
}

TEST_CASE("covariant contraction needs and uses the inverse metric") {
  PointTensor t(2, {Variance::Co, Variance::Co});
  t(0, 0) = 3.0;
  t(1, 1) = 5.0;
  CHECK_THROWS_AS((void)contract(t, 0, 1), std::invalid_argument);

  PointTensor ginv(2, {Variance::Contra, Variance::Contra});
  ginv(0, 0) = 2.0;
  ginv(1, 1) = 0.5;
  PointTensor tr = contract(t, 0, 1, &ginv);
  CHECK(tr.data()[0] == doctest::Approx(3.0 * 2.0 + 5.0 * 0.5));
}

TEST_CASE("contraction against einsum-style manual loops on random data") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int d = 3;
  PointTensor t(d, {Variance::Co, Variance::Co, Variance::Co, Variance::Co});
  for (double& x : t.data()) x = u(rng);
  PointTensor ginv(d, {Variance::Contra, Variance::Contra});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = u(rng) + (i == j ? 3.0 : 0.0);
      ginv(i, j) = v;
      ginv(j, i) = v;
    }

  PointTensor got = contract(t, 1, 2, &ginv);
  REQUIRE(got.degree() == 2);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double want = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) want += ginv(i, j) * t(a, i, j, b);
      CHECK(got(a, b) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("raise then lower is the identity") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int d = 4;
  PointTensor g(d, {Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      double v = 0.3 * u(rng);
      g(i, j) = v;
      g(j, i) = v;
    }
    g(i, i) = 2.0 + u(rng);
  }
  // invert by Gauss elimination on a copy
  PointTensor ginv(d, {Variance::Contra, Variance::Contra});
  {
    double a[4][8] = {};
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a[i][j] = g(i, j);
      a[i][d + i] = 1.0;
    }
    for (int c = 0; c < d; ++c) {
      int piv = c;
      for (int r = c + 1; r < d; ++r)
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      for (int k = 0; k < 2 * d; ++k) std::swap(a[c][k], a[piv][k]);
      double inv = 1.0 / a[c][c];
      for (int k = 0; k < 2 * d; ++k) a[c][k] *= inv;
      for (int r = 0; r < d; ++r)
        if (r != c) {
          double f = a[r][c];
          for (int k = 0; k < 2 * d; ++k) a[r][k] -= f * a[c][k];
        }
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ginv(i, j) = a[i][d + j];
  }

  PointTensor t(d, {Variance::Co, Variance::Co, Variance::Co});
  for (double& x : t.data()) x = u(rng);
  PointTensor up = raise_slot(t, 1, ginv);
  CHECK(up.variance()[1] == Variance::Contra);
  PointTensor down = lower_slot(up, 1, g);
  double diff = 0.0;
  for (std::size_t i = 0; i < t.data().size(); ++i)
    diff = std::max(diff, std::abs(t.data()[i] - down.data()[i]));
  CHECK(diff <= 1e-12);
}

TEST_CASE("complex_eval is multilinear over the complexification") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int d = 3;
  PointTensor t(d, {Variance::Co, Variance::Co});
  for (double& x : t.data()) x = u(rng);

  ComplexVector a, b;
  a.v = {{1, 2}, {0, -1}, {3, 0}};
  b.v = {{-2, 1}, {1, 1}, {0, 2}};

  std::complex<double> want = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) want += t(i, j) * a[i] * b[j];
  std::complex<double> got = complex_eval(t, std::vector<ComplexVector>{a, b});
  CHECK(std::abs(got - want) <= 1e-13);

  // linearity in the first slot
  ComplexVector a2 = a;
  for (auto& c : a2.v) c *= std::complex<double>(0.5, -1.5);
  std::complex<double> scaled = complex_eval(t, std::vector<ComplexVector>{a2, b});
  CHECK(std::abs(scaled - std::complex<double>(0.5, -1.5) * got) <= 1e-12);

  CHECK_THROWS_AS((void)complex_eval(t, std::vector<ComplexVector>{a}),
                  std::invalid_argument);
}

TEST_CASE("symmetry defects detect exact symmetries and quantify breakage") {
  const int d = 4;
  PointTensor s(d, {Variance::Co, Variance::Co});
  s(0, 1) = 2.0;
  s(1, 0) = 2.0;
  s(2, 3) = -1.0;
  s(3, 2) = -1.0;
  CHECK(defect_sym_pair(s, 0, 1) == 0.0);
  s(3, 2) = -1.0 + 0.25;
  CHECK(defect_sym_pair(s, 0, 1) == doctest::Approx(0.25));

  PointTensor k(d, {Variance::Co, Variance::Co});
  k(0, 1) = 1.0;
  k(1, 0) = -1.0;
  CHECK(defect_skew_pair(k, 0, 1) == 0.0);
  k(1, 0) = -0.5;
  CHECK(defect_skew_pair(k, 0, 1) == doctest::Approx(0.5));
}

TEST_CASE("hybrid defect vanishes exactly for J-invariant bilinear forms") {
  const int d = 4;
  PointTensor j = standard_j(d);
  PointTensor g = identity_metric(d);
  CHECK(defect_hybrid(g, j) == doctest::Approx(0.0));

  PointTensor q(d, {Variance::Co, Variance::Co});
  // J-invariant: q(x,y) = x.y restricted pattern q(e1,e1)=q(e3,e3)=2
  q(0, 0) = 2.0;
  q(2, 2) = 2.0;
  q(1, 1) = 1.0;
  q(3, 3) = 1.0;
  CHECK(defect_hybrid(q, j) == doctest::Approx(0.0));
  q(0, 0) = 3.0;  // breaks the pairing with e3
  CHECK(defect_hybrid(q, j) == doctest::Approx(1.0));
}

TEST_CASE("degree-4 defects recognize curvature-style symmetries") {
  const int d = 2;
  PointTensor r(d, {Variance::Co, Variance::Co, Variance::Co, Variance::Co});
  // constant-curvature pattern: R(x,y,z,u) = g(x,u)g(y,z) - g(x,z)g(y,u)
  PointTensor g = identity_metric(d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int u = 0; u < d; ++u)
          r(x, y, z, u) = g(x, u) * g(y, z) - g(x, z) * g(y, u);

  CHECK(defect_skew_pair(r, 0, 1) == 0.0);
  CHECK(defect_skew_pair(r, 2, 3) == 0.0);
  CHECK(defect_pair_exchange(r) == 0.0);
  CHECK(defect_cyclic_012(r) == 0.0);

  r(0, 1, 0, 1) += 0.125;
  CHECK(defect_skew_pair(r, 0, 1) == doctest::Approx(0.125));
}

TEST_CASE("scalars and degree bounds") {
  PointTensor s = PointTensor::scalar(3, 4.5);
  CHECK(s.degree() == 0);
  CHECK(s.data()[0] == 4.5);
  CHECK(max_norm(s) == 4.5);
  CHECK_THROWS_AS(PointTensor(3, std::vector<Variance>(6, Variance::Co)),
                  std::invalid_argument);
}

TEST_SUITE_END();

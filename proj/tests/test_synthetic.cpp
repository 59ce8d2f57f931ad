#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "bochnerlab/synthetic.hpp"
#include "bochnerlab/tensor.hpp"
#include "doctest.h"

using namespace bochnerlab;
using tensor::ComplexVector;
using tensor::PointTensor;
using tensor::Variance;

namespace {

PointTensor random_deg3(int dim, std::uint64_t seed) {
  PointTensor t(dim, {Variance::Co, Variance::Co, Variance::Co});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& v : t.data()) v = u(rng);
  return t;
}

// t with J pushed into the last two covariant slots
PointTensor j_last_two(const PointTensor& t, const PointTensor& j) {
  const int d = t.dim();
  PointTensor out(d, t.variance());
  for (int a = 0; a < d; ++a)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        double s = 0.0;
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) s += t(a, p, q) * j(p, y) * j(q, z);
        out(a, y, z) = s;
      }
  return out;
}

ComplexVector random_cvec(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexVector w;
  w.v.resize(dim);
  for (auto& c : w.v) c = {u(rng), u(rng)};
  return w;
}

}  // namespace

TEST_SUITE("synthetic") {

TEST_CASE("projection output is skew and sign-reversing under J") {
  for (int n : {3, 4}) {
    const int dim = 2 * n;
    auto sp = synth::synthetic_point(11, n);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto raw = random_deg3(dim, seed);
      auto a = synth::admissible_projection(raw, sp.j);
      CHECK(tensor::defect_skew_pair(a, 1, 2) <= 1e-12);
      auto flipped = j_last_two(a, sp.j);
      flipped += a;
      CHECK(tensor::max_norm(flipped) <= 1e-12);
    }
  }
}

TEST_CASE("projection is idempotent") {
  auto sp = synth::synthetic_point(4, 3);
  auto raw = random_deg3(sp.dim, 9);
  auto once = synth::admissible_projection(raw, sp.j);
  auto twice = synth::admissible_projection(once, sp.j);
  twice -= once;
  CHECK(tensor::max_norm(twice) <= 1e-13 * (1.0 + tensor::max_norm(once)));
}

TEST_CASE("mixed complex entries of the derivative structure vanish") {
  // sign reversal under J on both argument slots says exactly that the
  // (1,1)-part is absent: a(w, z_a, zbar_b) = 0 for every direction w.
  auto sp = synth::synthetic_point(21, 3);
  std::mt19937_64 rng(77);
  const auto& f = sp.frame;
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    auto w = random_cvec(sp.dim, rng);
    for (int a = 0; a < sp.n; ++a)
      for (int b = 0; b < sp.n; ++b) {
        std::array<ComplexVector, 3> args = {w, f.z[a], f.zbar[b]};
        worst = std::max(worst, std::abs(tensor::complex_eval(sp.a, args)));
      }
  }
  CHECK(worst <= 1e-12 * (1.0 + tensor::max_norm(sp.a)));
}

TEST_CASE("q derivative is symmetric and carries the forced part") {
  for (std::uint64_t seed : {1u, 5u, 9u}) {
    auto sp = synth::synthetic_point(seed, 3);
    CHECK(tensor::defect_sym_pair(sp.dq, 1, 2) <= 1e-12);
    // differentiate q(y,z) = q(Jy,Jz): the anti-hybrid part of dq must equal
    // the commutator terms built from a, with nothing left over
    auto anti = sp.dq - j_last_two(sp.dq, sp.j);
    auto forced = synth::forced_dq_part(sp.q, sp.a, sp.g_inv, sp.j);
    anti -= forced;
    CHECK(tensor::max_norm(anti) <= 1e-12 * (1.0 + tensor::max_norm(sp.dq)));
  }
}

TEST_CASE("complex pairings of q match the eigenvalues") {
  auto sp = synth::synthetic_point(3, 4);
  const auto& f = sp.frame;
  for (int a = 0; a < sp.n; ++a)
    for (int b = 0; b < sp.n; ++b) {
      std::array<ComplexVector, 2> mixed = {f.z[a], f.zbar[b]};
      std::array<ComplexVector, 2> holo = {f.z[a], f.z[b]};
      auto qm = tensor::complex_eval(sp.q, mixed);
      auto qh = tensor::complex_eval(sp.q, holo);
      double want = a == b ? 2.0 * sp.mu[a] : 0.0;
      CHECK(std::abs(qm - want) <= 1e-12);
      CHECK(std::abs(qh) <= 1e-12);
    }
}

TEST_CASE("draws are deterministic and mu can be pinned") {
  auto a = synth::synthetic_point(42, 3);
  auto b = synth::synthetic_point(42, 3);
  REQUIRE(a.a.data().size() == b.a.data().size());
  for (std::size_t k = 0; k < a.a.data().size(); ++k)
    CHECK(a.a.data()[k] == b.a.data()[k]);
  for (std::size_t k = 0; k < a.dq.data().size(); ++k)
    CHECK(a.dq.data()[k] == b.dq.data()[k]);
  CHECK(a.mu == b.mu);

  std::vector<double> mu = {1.0, -5.0, 0.25};
  auto c = synth::synthetic_point(42, 3, mu);
  CHECK(c.mu == mu);
  CHECK(c.frame.mu == mu);
  // pinning mu must not disturb the rest of the draw
  for (std::size_t k = 0; k < a.a.data().size(); ++k)
    CHECK(a.a.data()[k] == c.a.data()[k]);
  // diagonal carries mu itself, duplicated over the two blocks; the factor
  // two only shows up in the z / zbar pairing
  CHECK(c.q(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.q(4, 4) == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("zero spectrum still leaves an informative structure") {
  auto sp = synth::synthetic_point(0, 3, std::vector<double>{0.0, 0.0, 0.0});
  CHECK(tensor::max_norm(sp.q) == 0.0);
  CHECK(tensor::max_norm(sp.a) > 1e-3);
  CHECK(tensor::defect_skew_pair(sp.a, 1, 2) <= 1e-12);
}

TEST_CASE("small n is rejected") {
  CHECK_THROWS_AS(synth::synthetic_point(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(synth::synthetic_point(1, 0), std::invalid_argument);
}

}  // TEST_SUITE

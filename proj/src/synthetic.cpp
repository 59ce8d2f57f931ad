#include "bochnerlab/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bochnerlab::synth {

using tensor::PointTensor;
using tensor::Variance;

namespace {

// t with J substituted into the last two slots
PointTensor j_both_last(const PointTensor& t, const PointTensor& j) {
  const int d = t.dim();
  PointTensor out(d, t.variance());
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        double acc = 0.0;
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) acc += t(x, p, q) * j(p, y) * j(q, z);
        out(x, y, z) = acc;
      }
  return out;
}

}  // namespace

PointTensor admissible_projection(const PointTensor& t, const PointTensor& j) {
  if (t.degree() != 3 || j.degree() != 2 || t.dim() != j.dim())
    throw std::invalid_argument("admissible_projection needs a (0,3) tensor and J");
  const int d = t.dim();
  PointTensor skew(d, t.variance());
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) skew(x, y, z) = 0.5 * (t(x, y, z) - t(x, z, y));
  PointTensor out = skew;
  out -= j_both_last(skew, j);
  out *= 0.5;
  return out;
}

PointTensor forced_dq_part(const PointTensor& q, const PointTensor& a,
                           const PointTensor& g_inv, const PointTensor& j) {
  const int d = q.dim();
  // endomorphism of a per direction: e(dir,y)^k = g_inv^{kw} a(dir,y,w)
  std::vector<double> endo(static_cast<std::size_t>(d) * d * d, 0.0);
  auto e = [&](int dir, int k, int y) -> double& {
    return endo[(static_cast<std::size_t>(dir) * d + k) * d + y];
  };
  for (int dir = 0; dir < d; ++dir)
    for (int k = 0; k < d; ++k)
      for (int y = 0; y < d; ++y) {
        double acc = 0.0;
        for (int w = 0; w < d; ++w) acc += g_inv(k, w) * a(dir, y, w);
        e(dir, k, y) = acc;
      }
  PointTensor out(d, {Variance::Co, Variance::Co, Variance::Co});
  for (int dir = 0; dir < d; ++dir)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        double acc = 0.0;
        for (int k = 0; k < d; ++k)
          for (int m = 0; m < d; ++m)
            acc += q(k, m) * (e(dir, k, y) * j(m, z) + j(k, y) * e(dir, m, z));
        out(dir, y, z) = acc;
      }
  return out;
}

SyntheticPoint synthetic_point(std::uint64_t seed, int n,
                               const std::optional<std::vector<double>>& mu) {
  if (n < 3) throw std::invalid_argument("synthetic points need n >= 3");
  if (mu && static_cast<int>(mu->size()) != n)
    throw std::invalid_argument("mu must list one eigenvalue per complex direction");

  SyntheticPoint sp;
  sp.n = n;
  sp.dim = 2 * n;
  const int d = sp.dim;

  sp.g = PointTensor(d, {Variance::Co, Variance::Co});
  sp.g_inv = PointTensor(d, {Variance::Contra, Variance::Contra});
  sp.j = PointTensor(d, {Variance::Contra, Variance::Co});
  for (int i = 0; i < d; ++i) {
    sp.g(i, i) = 1.0;
    sp.g_inv(i, i) = 1.0;
  }
  for (int k = 0; k < n; ++k) {
    sp.j(k + n, k) = 1.0;
    sp.j(k, k + n) = -1.0;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> eig(-2.0, 2.0);

  sp.mu.resize(n);
  for (double& m : sp.mu) m = eig(rng);
  if (mu) sp.mu = *mu;

  sp.q = PointTensor(d, {Variance::Co, Variance::Co});
  for (int k = 0; k < n; ++k) {
    sp.q(k, k) = sp.mu[k];
    sp.q(k + n, k + n) = sp.mu[k];
  }

  PointTensor raw(d, {Variance::Co, Variance::Co, Variance::Co});
  for (double& v : raw.data()) v = unit(rng);
  sp.a = admissible_projection(raw, sp.j);

  // free symmetric hybrid part plus the part hybridity of q forces
  PointTensor s(d, {Variance::Co, Variance::Co, Variance::Co});
  for (double& v : s.data()) v = unit(rng);
  PointTensor sym(d, {Variance::Co, Variance::Co, Variance::Co});
  for (int dir = 0; dir < d; ++dir)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) sym(dir, y, z) = 0.5 * (s(dir, y, z) + s(dir, z, y));
  sp.dq = sym + j_both_last(sym, sp.j);
  sp.dq *= 0.5;
  PointTensor forced = forced_dq_part(sp.q, sp.a, sp.g_inv, sp.j);
  forced *= 0.5;
  sp.dq += forced;

  sp.frame = cframe::adapted_frame(sp.g, sp.j);
  sp.frame.mu = sp.mu;
  sp.frame.mu_cluster.assign(n, 0);
  for (int k = 1; k < n; ++k)
    sp.frame.mu_cluster[k] =
        sp.frame.mu_cluster[k - 1] +
        (std::abs(sp.mu[k] - sp.mu[k - 1]) > 1e-12 ? 1 : 0);
  cframe::complexify(sp.frame);
  return sp;
}

}  // namespace bochnerlab::synth

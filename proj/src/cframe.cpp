#include "bochnerlab/cframe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace bochnerlab::cframe {

using tensor::PointTensor;

namespace {

double inner(const PointTensor& g, const std::vector<double>& x,
             const std::vector<double>& y) {
  double acc = 0.0;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) acc += g(i, j) * x[i] * y[j];
  return acc;
}

void check_structure(const PointTensor& g, const PointTensor& j) {
  if (g.degree() != 2 || j.degree() != 2 || g.dim() != j.dim())
    throw std::invalid_argument("frame construction needs (0,2) g and (1,1) J");
  if (g.dim() % 2 != 0)
    throw FrameError("adapted frames need an even-dimensional space");
}

}  // namespace

AdaptedFrame adapted_frame(const PointTensor& g, const PointTensor& j) {
  check_structure(g, j);
  const int d = g.dim();
  const int n = d / 2;
  const double scale = 1.0 + tensor::max_norm(g);

  AdaptedFrame f;
  f.n = n;
  f.dim = d;

  std::vector<std::vector<double>> span;  // e_1, Je_1, e_2, Je_2, ...
  for (int cand = 0; cand < d && static_cast<int>(f.e.size()) < n; ++cand) {
    std::vector<double> v(d, 0.0);
    v[cand] = 1.0;
    // modified Gram-Schmidt, twice for stability
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : span) {
        double c = inner(g, v, b);
        for (int i = 0; i < d; ++i) v[i] -= c * b[i];
      }
    double norm2 = inner(g, v, v);
    if (norm2 < 1e-12 * scale) continue;  // candidate already in the span
    double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
    std::vector<double> jv = tensor::apply_endo(j, v);
    f.e.push_back(v);
    f.je.push_back(jv);
    span.push_back(std::move(v));
    span.push_back(std::move(jv));
  }
  if (static_cast<int>(f.e.size()) < n)
    throw FrameError("coordinate directions failed to span an adapted frame");
  return f;
}

AdaptedFrame diagonalize_q(const PointTensor& q, const PointTensor& g,
                           const PointTensor& j, const AdaptedFrame& frame,
                           double tol, double cluster_tol) {
  const int n = frame.n;
  const double qscale = 1.0 + tensor::max_norm(q);
  if (tensor::defect_sym_pair(q, 0, 1) > tol * qscale)
    throw std::invalid_argument("q is not symmetric within tolerance");
  if (tensor::defect_hybrid(q, j) > tol * qscale)
    throw std::invalid_argument("q is not hybrid within tolerance");

  auto qval = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (int a = 0; a < q.dim(); ++a)
      for (int b = 0; b < q.dim(); ++b) acc += q(a, b) * x[a] * y[b];
    return acc;
  };

  // hermitian matrix of q on the (1,0) space spanned by z_k = e_k - i Je_k
  Eigen::MatrixXcd h(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double re = 0.5 * (qval(frame.e[a], frame.e[b]) + qval(frame.je[a], frame.je[b]));
      double im = 0.5 * (qval(frame.e[a], frame.je[b]) - qval(frame.je[a], frame.e[b]));
      h(a, b) = std::complex<double>(re, im);
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw FrameError("eigen decomposition failed");

  // descending eigenvalue order, stable for ties
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return es.eigenvalues()(a) > es.eigenvalues()(b);
  });

  AdaptedFrame out;
  out.n = n;
  out.dim = frame.dim;
  out.mu.resize(n);
  out.e.assign(n, std::vector<double>(frame.dim, 0.0));
  out.je.assign(n, std::vector<double>(frame.dim, 0.0));
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    out.mu[k] = es.eigenvalues()(src);
    // h is the conjugate of the operator matrix in the complex basis, so the
    // eigenvector needs a conjugation before it maps to the real vector
    // sum_a Re(w_a) e_a + Im(w_a) Je_a
    for (int a = 0; a < n; ++a) {
      const std::complex<double> w = std::conj(es.eigenvectors()(a, src));
      for (int i = 0; i < frame.dim; ++i) {
        out.e[k][i] += w.real() * frame.e[a][i] + w.imag() * frame.je[a][i];
        out.je[k][i] += w.real() * frame.je[a][i] - w.imag() * frame.e[a][i];
      }
    }
  }

  out.mu_cluster.resize(n);
  int cluster = 0;
  for (int k = 0; k < n; ++k) {
    if (k > 0 && std::abs(out.mu[k - 1] - out.mu[k]) > cluster_tol * qscale) ++cluster;
    out.mu_cluster[k] = cluster;
  }

  // the commutation of the (1,1) form of q with J is a consequence of the
  // symmetry and hybrid checks; verify rather than assume
  double defect = frame_q_defect(out, q);
  if (defect > std::sqrt(tol) * qscale)
    throw FrameError("q failed to diagonalize in an adapted frame");
  (void)g;
  return out;
}

void complexify(AdaptedFrame& frame) {
  frame.z.clear();
  frame.zbar.clear();
  for (int k = 0; k < frame.n; ++k) {
    tensor::ComplexVector z, zb;
    z.v.resize(frame.dim);
    zb.v.resize(frame.dim);
    for (int i = 0; i < frame.dim; ++i) {
      z.v[i] = std::complex<double>(frame.e[k][i], -frame.je[k][i]);
      zb.v[i] = std::complex<double>(frame.e[k][i], frame.je[k][i]);
    }
    frame.z.push_back(std::move(z));
    frame.zbar.push_back(std::move(zb));
  }
}

double frame_gram_defect(const AdaptedFrame& f, const PointTensor& g) {
  std::vector<const std::vector<double>*> basis;
  for (int k = 0; k < f.n; ++k) {
    basis.push_back(&f.e[k]);
    basis.push_back(&f.je[k]);
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      double want = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner(g, *basis[a], *basis[b]) - want));
    }
  return worst;
}

double frame_j_defect(const AdaptedFrame& f, const PointTensor& j) {
  double worst = 0.0;
  for (int k = 0; k < f.n; ++k) {
    auto jv = tensor::apply_endo(j, f.e[k]);
    for (int i = 0; i < f.dim; ++i)
      worst = std::max(worst, std::abs(jv[i] - f.je[k][i]));
  }
  return worst;
}

double frame_q_defect(const AdaptedFrame& f, const PointTensor& q) {
  if (f.mu.empty()) throw FrameError("frame has no eigenvalues yet");
  auto qval = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (int a = 0; a < q.dim(); ++a)
      for (int b = 0; b < q.dim(); ++b) acc += q(a, b) * x[a] * y[b];
    return acc;
  };
  double worst = 0.0;
  for (int a = 0; a < f.n; ++a)
    for (int b = 0; b < f.n; ++b) {
      double mu = a == b ? f.mu[a] : 0.0;
      worst = std::max(worst, std::abs(qval(f.e[a], f.e[b]) - mu));
      worst = std::max(worst, std::abs(qval(f.je[a], f.je[b]) - mu));
      worst = std::max(worst, std::abs(qval(f.e[a], f.je[b])));
    }
  return worst;
}

}  // namespace bochnerlab::cframe

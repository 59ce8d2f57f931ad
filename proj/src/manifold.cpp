#include "bochnerlab/manifold.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "bochnerlab/bochner.hpp"

namespace bochnerlab::manifold {

using jets::Jet;
using jets::JetMatrix;
using tensor::PointTensor;
using tensor::Variance;

namespace {

void check_point(const ChartManifold& m, std::span<const double> point) {
  if (static_cast<int>(point.size()) != m.dim)
    throw ManifoldError("point dimension does not match the chart");
}

std::vector<Jet> seed_env(std::span<const double> point, int order) {
  const int d = static_cast<int>(point.size());
  std::vector<Jet> env;
  env.reserve(d);
  for (int i = 0; i < d; ++i) env.push_back(Jet::variable(d, order, i, point[i]));
  return env;
}

std::vector<Jet> embedding_jets(const EmbeddedStructure& emb,
                                std::span<const double> point, int order) {
  auto env = seed_env(point, order);
  std::vector<Jet> f;
  f.reserve(emb.ambient_dim);
  for (const auto& comp : emb.map) f.push_back(expr::eval_jet(comp, env));
  return f;
}

JetMatrix differential(const std::vector<Jet>& f, int chart_dim) {
  JetMatrix df(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    df[a].reserve(chart_dim);
    for (int i = 0; i < chart_dim; ++i) df[a].push_back(f[a].derivative(i));
  }
  return df;
}

// chart metric as jets of the requested order
JetMatrix metric_jets(const ChartManifold& m, std::span<const double> point,
                      int order) {
  const int d = m.dim;
  if (m.embedded) {
    auto f = embedding_jets(*m.embedded, point, order + 1);
    JetMatrix df = differential(f, d);
    JetMatrix g = jets::jm_zero(d, d, d, order);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j) {
        Jet acc = df[0][i] * df[0][j];
        for (int a = 1; a < m.embedded->ambient_dim; ++a) acc += df[a][i] * df[a][j];
        g[i][j] = acc;
        g[j][i] = acc;
      }
    return g;
  }
  auto env = seed_env(point, order);
  JetMatrix g(d);
  for (int i = 0; i < d; ++i) {
    g[i].reserve(d);
    for (int j = 0; j < d; ++j) g[i].push_back(expr::eval_jet(m.metric[i][j], env));
  }
  return g;
}

// chart almost complex structure as jets of the requested order
JetMatrix j_jets(const ChartManifold& m, std::span<const double> point, int order) {
  const int d = m.dim;
  if (m.embedded) {
    const auto& emb = *m.embedded;
    auto f = embedding_jets(emb, point, order + 1);
    JetMatrix df = differential(f, d);
    std::vector<Jet> env;
    env.reserve(emb.ambient_dim);
    for (const auto& fj : f) env.push_back(fj.truncated(order));
    JetMatrix endo(emb.ambient_dim);
    for (int r = 0; r < emb.ambient_dim; ++r) {
      endo[r].reserve(emb.ambient_dim);
      for (int c = 0; c < emb.ambient_dim; ++c)
        endo[r].push_back(expr::eval_jet(emb.ambient_endo[r][c], env));
    }
    JetMatrix g = jets::jm_zero(d, d, d, order);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j) {
        Jet acc = df[0][i] * df[0][j];
        for (int a = 1; a < emb.ambient_dim; ++a) acc += df[a][i] * df[a][j];
        g[i][j] = acc;
        g[j][i] = acc;
      }
    // solve df * w = endo * df * v in the least-squares sense; the image is
    // tangent, so this is exact: J = g^-1 df^T endo df
    JetMatrix rhs = jets::jm_mul(jets::jm_transpose(df), jets::jm_mul(endo, df));
    return jets::jm_mul(jets::jm_inverse(g), rhs);
  }
  if (m.j.empty()) throw ManifoldError("chart has no almost complex structure");
  auto env = seed_env(point, order);
  JetMatrix j(d);
  for (int r = 0; r < d; ++r) {
    j[r].reserve(d);
    for (int c = 0; c < d; ++c) j[r].push_back(expr::eval_jet(m.j[r][c], env));
  }
  return j;
}

// connection coefficients (one order below the metric jets)
std::vector<JetMatrix> christoffel_jets(const JetMatrix& g, const JetMatrix& ginv) {
  const int d = static_cast<int>(g.size());
  const int order = g[0][0].order() - 1;
  std::vector<JetMatrix> gamma(d);
  for (int k = 0; k < d; ++k) gamma[k] = jets::jm_zero(d, d, d, order);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j) {
        Jet acc(g[0][0].dim(), order);
        for (int l = 0; l < d; ++l) {
          Jet sum = g[j][l].derivative(i) + g[i][l].derivative(j) - g[i][j].derivative(l);
          acc += ginv[k][l] * sum;
        }
        acc *= 0.5;
        gamma[k][i][j] = acc;
        gamma[k][j][i] = acc;
      }
  return gamma;
}

}  // namespace

StructureDiagnostics validate(const ChartManifold& m, std::span<const double> point,
                              double tol) {
  check_point(m, point);
  StructureDiagnostics out;
  out.dim = m.dim;
  out.has_j = m.has_j();

  JetMatrix g = metric_jets(m, point, 0);
  const int d = m.dim;
  Eigen::MatrixXd gm(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gm(i, j) = g[i][j].value();

  out.metric_symmetry = (gm - gm.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gm + gm.transpose()));
  out.metric_min_eigenvalue = es.eigenvalues().minCoeff();

  bool j_ok = true;
  if (out.has_j) {
    JetMatrix jj = j_jets(m, point, 0);
    Eigen::MatrixXd jm(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) jm(i, j) = jj[i][j].value();
    out.j_squared = (jm * jm + Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    out.compatibility = (jm.transpose() * gm * jm - gm).cwiseAbs().maxCoeff();
    j_ok = out.j_squared <= tol && out.compatibility <= tol;
    if (d % 2 != 0) j_ok = false;
  }

  const double scale = 1.0 + gm.cwiseAbs().maxCoeff();
  out.passed = out.metric_symmetry <= tol * scale &&
               out.metric_min_eigenvalue > tol * scale && j_ok;
  return out;
}

PointTensor christoffel(const ChartManifold& m, std::span<const double> point) {
  check_point(m, point);
  JetMatrix g = metric_jets(m, point, 1);
  JetMatrix ginv = jets::jm_inverse(g);
  auto gamma = christoffel_jets(g, ginv);
  const int d = m.dim;
  PointTensor out(d, {Variance::Contra, Variance::Co, Variance::Co});
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out(k, i, j) = gamma[k][i][j].value();
  return out;
}

CurvaturePackage curvature_package(const ChartManifold& m,
                                   std::span<const double> point) {
  check_point(m, point);
  const int d = m.dim;

  JetMatrix g3 = metric_jets(m, point, 3);
  JetMatrix ginv3 = jets::jm_inverse(g3);
  auto gamma2 = christoffel_jets(g3, ginv3);  // order 2

  // curvature with all slots lowered, one derivative order to spare
  std::vector<std::vector<JetMatrix>> r4(d, std::vector<JetMatrix>(d));
  {
    // first the (1,3) version: rup[rho][k] as a matrix in (i,j)
    std::vector<std::vector<JetMatrix>> rup(d, std::vector<JetMatrix>(d));
    for (int rho = 0; rho < d; ++rho)
      for (int k = 0; k < d; ++k) {
        rup[rho][k] = jets::jm_zero(d, d, d, 1);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < i; ++j) {
            Jet acc = gamma2[rho][j][k].derivative(i) - gamma2[rho][i][k].derivative(j);
            for (int lam = 0; lam < d; ++lam)
              acc += gamma2[rho][i][lam] * gamma2[lam][j][k] -
                     gamma2[rho][j][lam] * gamma2[lam][i][k];
            rup[rho][k][i][j] = acc;
            rup[rho][k][j][i] = -acc;
          }
      }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        r4[i][j] = jets::jm_zero(d, d, d, 1);
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            Jet acc(d, 1);
            for (int rho = 0; rho < d; ++rho) acc += g3[l][rho] * rup[rho][k][i][j];
            r4[i][j][k][l] = acc;
          }
      }
  }

  JetMatrix ric = jets::jm_zero(d, d, d, 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Jet acc(d, 1);
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) acc += ginv3[k][l] * r4[i][k][l][j];
      ric[i][j] = acc;
    }
  Jet tau(d, 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) tau += ginv3[i][j] * ric[i][j];

  CurvaturePackage pkg;
  pkg.point.assign(point.begin(), point.end());
  pkg.dim = d;
  pkg.n = d % 2 == 0 ? d / 2 : 0;

  pkg.g = PointTensor(d, {Variance::Co, Variance::Co});
  pkg.g_inv = PointTensor(d, {Variance::Contra, Variance::Contra});
  pkg.gamma = PointTensor(d, {Variance::Contra, Variance::Co, Variance::Co});
  pkg.riemann = PointTensor(d, {Variance::Co, Variance::Co, Variance::Co, Variance::Co});
  pkg.ricci = PointTensor(d, {Variance::Co, Variance::Co});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      pkg.g(i, j) = g3[i][j].value();
      pkg.g_inv(i, j) = ginv3[i][j].value();
      pkg.ricci(i, j) = ric[i][j].value();
      for (int k = 0; k < d; ++k) {
        pkg.gamma(i, j, k) = gamma2[i][j][k].value();
        for (int l = 0; l < d; ++l) pkg.riemann(i, j, k, l) = r4[i][j][k][l].value();
      }
    }
  pkg.scalar = tau.value();

  const auto& gam = pkg.gamma;
  pkg.nabla_riemann = PointTensor(
      d, {Variance::Co, Variance::Co, Variance::Co, Variance::Co, Variance::Co});
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            double acc = r4[i][j][k][l].d1(a);
            for (int mm = 0; mm < d; ++mm) {
              acc -= gam(mm, a, i) * pkg.riemann(mm, j, k, l);
              acc -= gam(mm, a, j) * pkg.riemann(i, mm, k, l);
              acc -= gam(mm, a, k) * pkg.riemann(i, j, mm, l);
              acc -= gam(mm, a, l) * pkg.riemann(i, j, k, mm);
            }
            pkg.nabla_riemann(a, i, j, k, l) = acc;
          }

  pkg.nabla_ricci = PointTensor(d, {Variance::Co, Variance::Co, Variance::Co});
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double acc = ric[i][j].d1(a);
        for (int mm = 0; mm < d; ++mm) {
          acc -= gam(mm, a, i) * pkg.ricci(mm, j);
          acc -= gam(mm, a, j) * pkg.ricci(i, mm);
        }
        pkg.nabla_ricci(a, i, j) = acc;
      }

  pkg.nabla_scalar = PointTensor(d, {Variance::Co});
  for (int a = 0; a < d; ++a) pkg.nabla_scalar(a) = tau.d1(a);

  if (pkg.n > 0)
    pkg.nabla_q = bochner::nabla_q_tensor(pkg.nabla_ricci, pkg.nabla_scalar, pkg.g,
                                          pkg.n);

  if (m.has_j()) {
    JetMatrix j1 = j_jets(m, point, 1);
    PointTensor jt(d, {Variance::Contra, Variance::Co});
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) jt(i, j) = j1[i][j].value();
    pkg.j = jt;

    PointTensor nj(d, {Variance::Co, Variance::Co, Variance::Co});
    for (int a = 0; a < d; ++a)
      for (int col = 0; col < d; ++col)
        for (int l = 0; l < d; ++l) {
          double acc = 0.0;
          for (int i = 0; i < d; ++i) {
            double cov = j1[i][col].d1(a);
            for (int mm = 0; mm < d; ++mm)
              cov += gam(i, a, mm) * jt(mm, col) - gam(mm, a, col) * jt(i, mm);
            acc += pkg.g(l, i) * cov;
          }
          nj(a, col, l) = acc;
        }
    pkg.nabla_j = nj;
  }

  return pkg;
}

double second_bianchi_defect(const CurvaturePackage& pkg) {
  const auto& dr = pkg.nabla_riemann;
  const int d = pkg.dim;
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            double cyc = dr(a, i, j, k, l) + dr(i, j, a, k, l) + dr(j, a, i, k, l);
            worst = std::max(worst, std::abs(cyc));
          }
  return worst;
}

std::vector<double> random_domain_point(const ChartManifold& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<double> p = m.default_point;
  if (p.empty()) p.assign(m.dim, 0.0);
  for (int i = 0; i < m.dim; ++i) {
    double x = p[i] + u(rng);
    if (!m.domain.empty()) {
      const auto [lo, hi] = m.domain[i];
      const double margin = 0.05 * (hi - lo);
      x = std::min(std::max(x, lo + margin), hi - margin);
    }
    p[i] = x;
  }
  return p;
}

}  // namespace bochnerlab::manifold

#include <array>
#include <cmath>
#include <stdexcept>

#include "bochnerlab/manifold.hpp"

namespace bochnerlab::manifold {

namespace ex = bochnerlab::expr;
using ex::NodePtr;

namespace {

// ------------------------------------------------------ octonion algebra

struct Quat {
  std::array<int, 4> c{};  // coefficients on 1, i, j, k
};

Quat qconj(const Quat& q) { return {{q.c[0], -q.c[1], -q.c[2], -q.c[3]}}; }

Quat qmul(const Quat& a, const Quat& b) {
  // basis products (sign, index) for 1,i,j,k
  static const int sign[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const int index[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  Quat out;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      out.c[index[p][q]] += sign[p][q] * a.c[p] * b.c[q];
  return out;
}

struct Octonion {
  Quat x, y;  // the pair (x, y) in the doubling construction
};

Octonion omul(const Octonion& a, const Octonion& b) {
  // (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))
  Octonion out;
  Quat t1 = qmul(a.x, b.x);
  Quat t2 = qmul(qconj(b.y), a.y);
  Quat t3 = qmul(b.y, a.x);
  Quat t4 = qmul(a.y, qconj(b.x));
  for (int i = 0; i < 4; ++i) {
    out.x.c[i] = t1.c[i] - t2.c[i];
    out.y.c[i] = t3.c[i] + t4.c[i];
  }
  return out;
}

Octonion obasis(int idx) {
  Octonion o;
  if (idx < 4)
    o.x.c[idx] = 1;
  else
    o.y.c[idx - 4] = 1;
  return o;
}

}  // namespace

std::vector<CrossEntry> cross_product_structure_constants() {
  // e_a x e_b for imaginary units a,b in 1..7, read off the octonion product
  std::vector<CrossEntry> table;
  for (int a = 1; a <= 7; ++a)
    for (int b = 1; b <= 7; ++b) {
      if (a == b) continue;
      Octonion prod = omul(obasis(a), obasis(b));
      for (int c = 1; c <= 7; ++c) {
        int coeff = c < 4 ? prod.x.c[c] : prod.y.c[c - 4];
        if (coeff != 0) table.push_back({a, b, c, coeff});
      }
    }
  return table;
}

namespace {

// ------------------------------------------------------- chart builders

NodePtr zero() { return ex::constant(0.0); }
NodePtr one() { return ex::constant(1.0); }

std::vector<std::vector<ex::Expression>> constant_matrix(
    const std::vector<std::vector<NodePtr>>& entries, int dim) {
  std::vector<std::vector<ex::Expression>> out;
  out.reserve(entries.size());
  for (const auto& row : entries) {
    std::vector<ex::Expression> r;
    r.reserve(row.size());
    for (const auto& e : row) r.emplace_back(e, dim);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<NodePtr>> standard_j_nodes(int n) {
  const int d = 2 * n;
  std::vector<std::vector<NodePtr>> j(d, std::vector<NodePtr>(d, zero()));
  for (int k = 0; k < n; ++k) {
    j[k + n][k] = one();
    j[k][k + n] = ex::constant(-1.0);
  }
  return j;
}

ChartManifold make_flat_cn(int n) {
  if (n < 1) throw ManifoldError("flat_cn needs n >= 1");
  const int d = 2 * n;
  ChartManifold m;
  m.name = "flat_cn";
  m.dim = d;
  std::vector<std::vector<NodePtr>> g(d, std::vector<NodePtr>(d, zero()));
  for (int i = 0; i < d; ++i) g[i][i] = one();
  m.metric = constant_matrix(g, d);
  m.j = constant_matrix(standard_j_nodes(n), d);
  m.default_point.assign(d, 0.0);
  return m;
}

ChartManifold make_fubini_study(int n) {
  if (n < 1) throw ManifoldError("fubini_study_cpn needs n >= 1");
  const int d = 2 * n;
  ChartManifold m;
  m.name = "fubini_study_cpn";
  m.dim = d;

  // affine chart with complex coordinates z_a = x_a + i x_{n+a}; the metric
  // is normalized to constant holomorphic sectional curvature 4
  NodePtr dsum = one();
  for (int i = 0; i < d; ++i)
    dsum = ex::add(dsum, ex::pow(ex::variable(i), 2));
  NodePtr d2 = ex::pow(dsum, 2);

  auto u = [&](int a) { return ex::variable(a); };
  auto v = [&](int a) { return ex::variable(n + a); };

  std::vector<std::vector<NodePtr>> g(d, std::vector<NodePtr>(d, zero()));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      NodePtr s;  // (D delta_ab - u_a u_b - v_a v_b) / D^2
      NodePtr cross = ex::add(ex::mul(u(a), u(b)), ex::mul(v(a), v(b)));
      if (a == b)
        s = ex::div(ex::sub(dsum, cross), d2);
      else
        s = ex::neg(ex::div(cross, d2));
      g[a][b] = s;
      g[n + a][n + b] = s;
      if (a != b) {
        NodePtr t = ex::div(ex::sub(ex::mul(v(a), u(b)), ex::mul(u(a), v(b))), d2);
        g[a][n + b] = t;
        g[n + b][a] = t;
      }
    }
  m.metric = constant_matrix(g, d);
  m.j = constant_matrix(standard_j_nodes(n), d);

  m.default_point.resize(d);
  for (int i = 0; i < d; ++i)
    m.default_point[i] = (i % 2 ? -1.0 : 1.0) * (0.08 + 0.027 * i);
  return m;
}

ChartManifold make_s6() {
  const int d = 6;
  ChartManifold m;
  m.name = "s6_nearly_kahler";
  m.dim = d;

  EmbeddedStructure emb;
  emb.ambient_dim = 7;

  // gnomonic chart onto the unit sphere: f = (x, 1)/sqrt(1 + |x|^2)
  NodePtr s = one();
  for (int i = 0; i < d; ++i) s = ex::add(s, ex::pow(ex::variable(i), 2));
  NodePtr root = ex::sqrt(s);
  for (int i = 0; i < d; ++i)
    emb.map.emplace_back(ex::div(ex::variable(i), root), d);
  emb.map.emplace_back(ex::div(one(), root), d);

  // ambient almost complex structure: w -> y x w (cross product with the
  // base point), linear in the ambient coordinates y_1..y_7
  std::vector<std::vector<NodePtr>> endo(7, std::vector<NodePtr>(7, zero()));
  for (const auto& e : cross_product_structure_constants()) {
    // contribution f_{abc} y_a to entry (c, b)
    NodePtr term = ex::variable(e.a - 1);
    if (e.sign < 0) term = ex::neg(term);
    NodePtr& cell = endo[e.c - 1][e.b - 1];
    cell = ex::equal(cell, zero()) ? term : ex::add(cell, term);
  }
  emb.ambient_endo = constant_matrix(endo, 7);

  m.embedded = std::move(emb);
  m.default_point = {0.1, 0.2, -0.1, 0.15, -0.05, 0.12};
  return m;
}

ChartManifold make_flat_twisted_j(int n) {
  if (n < 2) throw ManifoldError("flat_twisted_j needs n >= 2");
  const int d = 2 * n;
  ChartManifold m;
  m.name = "flat_twisted_j";
  m.dim = d;

  std::vector<std::vector<NodePtr>> g(d, std::vector<NodePtr>(d, zero()));
  for (int i = 0; i < d; ++i) g[i][i] = one();
  m.metric = constant_matrix(g, d);

  // rotate the pairing of the first two complex directions by the angle x3;
  // the metric stays flat while J ceases to be parallel
  NodePtr c = ex::cos(ex::variable(2));
  NodePtr sn = ex::sin(ex::variable(2));
  auto j = standard_j_nodes(n);
  j[n][0] = c;
  j[n + 1][0] = ex::neg(sn);
  j[n][1] = sn;
  j[n + 1][1] = c;
  j[0][n] = ex::neg(c);
  j[1][n] = ex::neg(sn);
  j[0][n + 1] = sn;
  j[1][n + 1] = ex::neg(c);
  m.j = constant_matrix(j, d);

  m.default_point.assign(d, 0.0);
  return m;
}

ChartManifold make_round_sphere(int dim, double radius) {
  if (dim < 2) throw ManifoldError("round_sphere_diag needs dim >= 2");
  if (!(radius > 0.0)) throw ManifoldError("round_sphere_diag needs radius > 0");
  ChartManifold m;
  m.name = "round_sphere_diag";
  m.dim = dim;

  // nested polar coordinates: g = R^2 diag(1, sin^2 x1, sin^2 x1 sin^2 x2, ...)
  std::vector<std::vector<NodePtr>> g(dim, std::vector<NodePtr>(dim, zero()));
  NodePtr r2 = ex::constant(radius * radius);
  NodePtr acc = r2;
  g[0][0] = acc;
  for (int k = 1; k < dim; ++k) {
    acc = ex::mul(acc, ex::pow(ex::sin(ex::variable(k - 1)), 2));
    g[k][k] = acc;
  }
  m.metric = constant_matrix(g, dim);

  const double pi = 3.14159265358979323846;
  m.default_point.assign(dim, pi / 4.0);
  m.default_point[dim - 1] = 0.3;
  m.domain.assign(dim - 1, {0.1, pi - 0.1});
  m.domain.push_back({-3.0, 3.0});
  return m;
}

}  // namespace

std::vector<std::string> zoo_names() {
  return {"flat_cn", "fubini_study_cpn", "s6_nearly_kahler", "flat_twisted_j",
          "round_sphere_diag"};
}

ChartManifold make_zoo(const std::string& name, const ZooParams& params) {
  if (name == "flat_cn") return make_flat_cn(params.n);
  if (name == "fubini_study_cpn") return make_fubini_study(params.n);
  if (name == "s6_nearly_kahler") return make_s6();
  if (name == "flat_twisted_j") return make_flat_twisted_j(params.n);
  if (name == "round_sphere_diag") return make_round_sphere(params.dim, params.radius);
  throw ManifoldError("unknown zoo chart '" + name + "'");
}

}  // namespace bochnerlab::manifold

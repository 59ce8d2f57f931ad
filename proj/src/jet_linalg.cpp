#include "bochnerlab/jet_linalg.hpp"

#include <cmath>
#include <utility>

namespace bochnerlab::jets {

JetMatrix jm_zero(int rows, int cols, int dim, int order) {
  return JetMatrix(rows, std::vector<Jet>(cols, Jet(dim, order)));
}

JetMatrix jm_identity(int n, int dim, int order) {
  JetMatrix m = jm_zero(n, n, dim, order);
  for (int i = 0; i < n; ++i) m[i][i] = Jet::constant(dim, order, 1.0);
  return m;
}

JetMatrix jm_mul(const JetMatrix& a, const JetMatrix& b) {
  const int r = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int c = static_cast<int>(b[0].size());
  JetMatrix out(r);
  for (int i = 0; i < r; ++i) {
    out[i].reserve(c);
    for (int j = 0; j < c; ++j) {
      Jet acc = a[i][0] * b[0][j];
      for (int m = 1; m < k; ++m) acc += a[i][m] * b[m][j];
      out[i].push_back(std::move(acc));
    }
  }
  return out;
}

JetMatrix jm_transpose(const JetMatrix& a) {
  const int r = static_cast<int>(a.size());
  const int c = static_cast<int>(a[0].size());
  JetMatrix out(c, std::vector<Jet>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) out[j][i] = a[i][j];
  return out;
}

JetMatrix jm_inverse(const JetMatrix& a) {
  const int n = static_cast<int>(a.size());
  JetMatrix work = a;
  JetMatrix inv = jm_identity(n, a[0][0].dim(), a[0][0].order());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(work[r][col].value()) > std::abs(work[piv][col].value())) piv = r;
    if (work[piv][col].value() == 0.0)
      throw JetDomainError("singular matrix in jet inversion");
    std::swap(work[piv], work[col]);
    std::swap(inv[piv], inv[col]);
    Jet scale = recip(work[col][col]);
    for (int j = 0; j < n; ++j) {
      work[col][j] = work[col][j] * scale;
      inv[col][j] = inv[col][j] * scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Jet f = work[r][col];
      if (max_abs_coefficient(f) == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        work[r][j] -= f * work[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace bochnerlab::jets

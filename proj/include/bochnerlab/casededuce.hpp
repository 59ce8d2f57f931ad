#pragma once

#include <array>
#include <string>
#include <vector>

namespace bochnerlab::deduce {

// Exact replay of the pointwise eigenvalue elimination.  The flags say which
// of the four complexified nabla-J entry families is nonzero at the point:
//   [0]  g((nabla_{z_b} J) z_b, z_a)      repeated holomorphic direction
//   [1]  g((nabla_{zbar_b} J) z_b, z_a)   conjugate repeated direction
//   [2]  g((nabla_{z_a} J) z_b, z_c)      distinct holomorphic slots
//   [3]  g((nabla_{zbar_a} J) z_b, z_c)   conjugate direction, distinct args
// Mixed holomorphic/antiholomorphic argument pairs vanish for every
// admissible structure, so these families exhaust nabla-J at the point.
//
// Any nonzero family forces all eigenvalues of the auxiliary form to vanish,
// which kills the curvature; no nonzero family means nabla-J itself vanishes.
// The replay runs on rational numbers, so every determinant and kernel below
// is an exact statement, not a tolerance.
struct CaseDeduction {
  std::string verdict;  // "flat at p", "Kählerian at p" or "not applicable"
  bool all_mu_zero = false;
  bool mirrored = false;  // family 0 was handled as the conjugate of family 1
  std::vector<std::string> trace;
};

CaseDeduction case_deduction(const std::array<bool, 4>& family_nonzero, int n);

}  // namespace bochnerlab::deduce

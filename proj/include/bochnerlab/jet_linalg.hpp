#pragma once

#include <vector>

#include "bochnerlab/jet.hpp"

namespace bochnerlab::jets {

// dense matrices over truncated jets, just enough for pullback metrics
using JetMatrix = std::vector<std::vector<Jet>>;

JetMatrix jm_zero(int rows, int cols, int dim, int order);
JetMatrix jm_identity(int n, int dim, int order);
JetMatrix jm_mul(const JetMatrix& a, const JetMatrix& b);
JetMatrix jm_transpose(const JetMatrix& a);

// Gauss-Jordan inverse with partial pivoting on the value parts; throws
// JetDomainError when the value matrix is singular
JetMatrix jm_inverse(const JetMatrix& a);

}  // namespace bochnerlab::jets

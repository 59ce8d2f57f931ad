#pragma once

#include <stdexcept>
#include <vector>

#include "bochnerlab/tensor.hpp"

namespace bochnerlab::cframe {

struct FrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Orthonormal frame e_1..e_n, Je_1..Je_n adapted to an almost Hermitian
// structure at a point, optionally rotated so that a given symmetric hybrid
// form is diagonal, together with its complexification
//   z_k = e_k - i Je_k,  zbar_k = e_k + i Je_k,  g(z_k, conj(z_k)) = 2.
struct AdaptedFrame {
  int n = 0;
  int dim = 0;
  std::vector<std::vector<double>> e;   // n vectors of length dim
  std::vector<std::vector<double>> je;  // J e_k, same layout
  std::vector<double> mu;               // eigenvalues, descending; empty before
                                        // diagonalization
  std::vector<int> mu_cluster;          // cluster index per eigenvalue
  std::vector<tensor::ComplexVector> z, zbar;  // filled by complexify
};

// greedy construction from coordinate directions; throws FrameError when the
// candidates cannot complete a frame
AdaptedFrame adapted_frame(const tensor::PointTensor& g,
                           const tensor::PointTensor& j);

// Rotates the frame so that the (1,1) form of q is diagonal.  q must be
// symmetric and hybrid within tol (relative to 1 + |q|); the rotated frame
// keeps the pairing je_k = J e_k.  Eigenvalues are sorted descending and
// clustered with the given tolerance for multiplicity reporting.
AdaptedFrame diagonalize_q(const tensor::PointTensor& q,
                           const tensor::PointTensor& g,
                           const tensor::PointTensor& j, const AdaptedFrame& frame,
                           double tol, double cluster_tol = 1e-7);

void complexify(AdaptedFrame& frame);

// diagnostics: all return the largest absolute violation
double frame_gram_defect(const AdaptedFrame& f, const tensor::PointTensor& g);
double frame_j_defect(const AdaptedFrame& f, const tensor::PointTensor& j);
double frame_q_defect(const AdaptedFrame& f, const tensor::PointTensor& q);

}  // namespace bochnerlab::cframe

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bochnerlab/cframe.hpp"
#include "bochnerlab/manifold.hpp"
#include "bochnerlab/synthetic.hpp"
#include "bochnerlab/tensor.hpp"

namespace bochnerlab::proof {

using Cx = std::complex<double>;

// The reduction steps of the rigidity argument, keyed by the names the tools
// accept.  Steps 3.1 through 3.5 are substitutions into the six-term
// curvature/nabla-J identity; 3.6 and det_34_35 are the quadratic
// compatibility conditions of the 3.4/3.5 system; 3.7 and final_nablaQ come
// from the second Bianchi identity for phi(q).
enum class Step {
  S31,
  S32,
  S33,
  S34,
  S35,
  S36,
  Det3435,
  S37,
  FinalNablaQ,
};

const char* step_name(Step step);
std::optional<Step> step_from_name(const std::string& name);
std::vector<Step> all_steps();

// Full six-term cyclic sum of the curvature/nabla-J identity for a (0,4)
// tensor r4, extended complex multilinearly.  n3 holds lowered nabla-J values
// (direction, argument, output); the output slot is raised with g_inv.
Cx eq24_lhs(const tensor::PointTensor& r4, const tensor::PointTensor& n3,
            const tensor::PointTensor& j, const tensor::PointTensor& g_inv,
            const tensor::ComplexVector& x, const tensor::ComplexVector& y,
            const tensor::ComplexVector& z, const tensor::ComplexVector& u,
            const tensor::ComplexVector& v);

// Directional derivative of the ten-term tensor phi(q) along a complex
// direction, assembled by the product rule: phi applied to the q-derivative
// plus the terms where J gets differentiated.
Cx nabla_phi_eval(const tensor::PointTensor& q, const tensor::PointTensor& dq,
                  const tensor::PointTensor& a3, const tensor::PointTensor& g,
                  const tensor::PointTensor& g_inv, const tensor::PointTensor& j,
                  const tensor::ComplexVector& dir, const tensor::ComplexVector& x,
                  const tensor::ComplexVector& y, const tensor::ComplexVector& z,
                  const tensor::ComplexVector& u);

// Second Bianchi cyclic sum for r := phi(q) over synthetic data.
Cx bianchi_phi_lhs(const synth::SyntheticPoint& sp, const tensor::ComplexVector& x,
                   const tensor::ComplexVector& y, const tensor::ComplexVector& z,
                   const tensor::ComplexVector& u, const tensor::ComplexVector& v);

// Closed-form value of one step from eigenvalues and complexified nabla-J /
// nabla-q data.  nabla_q may be null for the steps that do not use it.
Cx step_closed_form(Step step, std::span<const double> mu,
                    const std::vector<tensor::ComplexVector>& z,
                    const std::vector<tensor::ComplexVector>& zbar,
                    const tensor::PointTensor& nabla_j,
                    const tensor::PointTensor* nabla_q, int alpha, int beta,
                    int gamma);

// |closed form| of one step on manifold data; the frame must be complexified
// and diagonalizing, and alpha, beta, gamma must be pairwise distinct.
double proof_step_residual(Step step, const cframe::AdaptedFrame& frame,
                           const manifold::CurvaturePackage& pkg, int alpha,
                           int beta, int gamma);

// Synthetic oracle ----------------------------------------------------------
//
// Each substitution step is checked as an exact multilinear identity
//   raw_sum = constant * closed_form
// with the constant fixed on the first informative draw and frozen.  The
// final relation additionally carries the two nabla-q entries that the 3.7
// relation eliminates, so its model has three frozen constants.

struct StepCheck {
  std::string step;
  Cx constant{};            // frozen overall scale
  Cx aux[2]{};              // extra constants of the final relation model
  double worst_rel = 0.0;   // worst relative mismatch across draws
  int draws = 0;
  int uninformative = 0;    // draws where both sides were below noise
};

struct Calibration {
  std::optional<Cx> c31, c32, c33, c34, c35, c37;
  // the final relation model raw = c*closed + d1*e1 + d2*e2 calibrates from
  // buffered draws; see run_synthetic_oracle
  std::optional<Cx> cfin, dfin1, dfin2;
  std::vector<std::array<Cx, 4>> final_buffer;  // raw, closed, e1, e2
};

// Relative errors for steps 3.1..3.5 on one synthetic draw; calibrates any
// constant not yet frozen.
std::vector<double> calibrate_and_check_31_to_35(const synth::SyntheticPoint& sp,
                                                 Calibration& cal);

// Relative errors for the 3.7 and final-relation checks on one synthetic
// draw.  The draw must have mu[1] = mu[2] = 0, mirroring the state of the
// argument when those relations are derived.  Returns nothing while the
// final-relation model is still buffering calibration draws.
std::vector<double> calibrate_and_check_37(const synth::SyntheticPoint& sp,
                                           Calibration& cal);

struct OracleReport {
  int n = 0;
  int seeds = 0;
  std::vector<StepCheck> steps;
  double worst_rel = 0.0;
  bool passed = false;
};

// Runs the full synthetic verification: steps 3.1..3.5 on generic draws, the
// 3.7/final pair on draws with mu[1] = mu[2] = 0, and, when n > 3, the two
// extension substitutions that force the extra eigenvalue to vanish.
OracleReport run_synthetic_oracle(int seeds, int n, std::uint64_t base_seed = 1u);

}  // namespace bochnerlab::proof

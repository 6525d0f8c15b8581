#pragma once

#include "potential.hpp"

namespace planarpot {

struct EigenResult {
  double value = 0;    // eigenvalue
  ScalarField field;   // eigenfunction, unit discrete L^2 norm, positive
  double residual = 0; // ||A u - lambda u|| / ||u|| (relative to lambda)
  int iterations = 0;
};

// Five-point Dirichlet Laplacian on the masked cells (zero outside the mask).
void apply_laplacian(const QuadratureGrid& g, const std::vector<double>& x,
                     std::vector<double>& out);

// Smallest Dirichlet eigenvalue by shifted inverse iteration with CG solves.
EigenResult dirichlet_lambda1(const GridPtr& grid);

struct HardyResult {
  double h = 0;       // sqrt of the smallest generalized eigenvalue
  EigenResult eigen;  // the pencil eigenpair (value = h^2)
};

// Hardy constant: smallest generalized eigenvalue of the Laplacian against
// the cell-averaged weight 1/delta^2. Cells with delta < h carry the
// regularized weight 1/(clamp_factor h^2); the default factor calibrates the
// boundary-layer truncation against the convex-domain value 1/2.
HardyResult hardy_constant(const GridPtr& grid, double clamp_factor = 0.16);

// Discrete Rayleigh quotient x^T A x / x^T x with the same five-point form,
// so any admissible field bounds the discrete lambda1 from above.
double rayleigh_quotient(const ScalarField& f);

struct MsParams {
  // r1 = r1_factor * e^{1/2} * alpha * r, likewise r2. The default band is
  // wide enough for the grid to resolve the cutoff gradient at desk
  // resolutions; a band much thinner than one cell degenerates into a jump
  // and the quotient grows with resolution instead of stabilizing.
  double r1_factor = 1.02;
  double r2_factor = 1.35;
  double R_over_r = 8.0;
  int equilibrium_n = 200;
};

struct MsTestResult {
  ScalarField phi;
  double quotient = 0;
  double r1 = 0, r2 = 0, R = 0;
  bool excluded_empty = false;
};

// Maz'ya-Shubin style test function phi = (1 - chi) eta around a capacity
// radius candidate (center, r); the quotient is an upper bound certificate
// for the discrete lambda1.
MsTestResult ms_test_function(const GridPtr& grid, cxd center, double alpha, double r,
                              const MsParams& params = {});

} // namespace planarpot

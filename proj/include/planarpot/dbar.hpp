#pragma once

#include "bergman.hpp"

namespace planarpot {

// Solid Cauchy transform: u(z) = (1/pi) \int v(zeta)/(z - zeta); solves
// dbar u = v up to O(h) in the interior.
ComplexField cauchy_transform(const ComplexField& v);

// L^2 minimal solution: Cauchy transform minus its Bergman projection.
ComplexField canonical_solution(const BergmanBasis& basis, const ComplexField& v);

struct WeightedEstimateRow {
  double alpha = 0;
  double h_omega = 0;
  double constant = 0; // 16 h^2 / (2h - 3 alpha)^2
  double lhs = 0;      // \int |u0|^2 delta^alpha
  double rhs = 0;      // C \int |v|^2 delta^(2+alpha)
  double ratio = 0;
};

// Weighted L^2 estimate for the canonical solution; requires
// 0 < alpha < 2 h_omega / 3.
WeightedEstimateRow weighted_estimate_check(const BergmanBasis& basis, const ComplexField& v,
                                            double alpha, double h_omega);

struct LpEstimateRow {
  double p = 0;
  double u_lp = 0;       // ||u0||_p
  double v_l1 = 0;       // \int |v|
  double implied_c0 = 0; // ||u0||_p / ((2-p)^{-1/2} |Omega|^{1/p-1/2} \int|v|)
};

std::vector<LpEstimateRow> lp_estimate_check(const BergmanBasis& basis, const ComplexField& v,
                                             const std::vector<double>& p_ladder);

struct BoundaryDecayResult {
  std::vector<double> epsilons;
  std::vector<double> collar_integrals; // \int_{delta <= eps} |K(.,w)|^2
  double slope = 0;                     // fitted log-log slope
  bool ladder_truncated = false;
};

// Collar decay of |K(.,w)|^2 on a dyadic epsilon ladder.
BoundaryDecayResult boundary_decay(const BergmanBasis& basis, cxd w, int ladder = 6);

// Smooth radial bump supported in |z - c| < rho (C^inf, peak 1).
ComplexField bump_field(GridPtr grid, cxd c, double rho, cxd amplitude = 1.0);

} // namespace planarpot

#pragma once

#include <optional>
#include <vector>

#include "grid.hpp"

namespace planarpot {

struct DiscreteMeasure {
  std::vector<cxd> support;
  std::vector<double> weights; // nonnegative, sum to 1
};

enum class EnergyKernel { Logarithmic, Green };

struct EquilibriumResult {
  DiscreteMeasure measure;
  double energy = 0;   // maximal discrete energy I(mu0)
  double capacity = 0; // exp(energy)
  EnergyKernel kernel = EnergyKernel::Logarithmic;
  cxd green_center;      // Green kernel only
  double green_radius = 0;
  bool converged = true;
  int iterations = 0;

  // p_mu(z) = sum_j w_j k(z, x_j); -inf at support points of a point mass
  double potential(cxd z) const;
};

struct EquilibriumOptions {
  double grad_tol = 1e-8;
  int max_iterations = 20000;
};

// Logarithmic equilibrium problem on a weighted sample cloud. Samples with
// positive local length get a self-energy diagonal term (uniform-subsegment
// approximation); zero-length samples are Fekete-style, diagonal excluded.
EquilibriumResult log_equilibrium(const std::vector<WeightedSample>& samples,
                                  const EquilibriumOptions& opts = {});
EquilibriumResult log_equilibrium(const CompactSet& set, int n,
                                  const EquilibriumOptions& opts = {});

// g_{Delta(0,R)}(z,w) = log(R|z-w| / |R^2 - z conj(w)|), translated to center c.
double green_function_disk(double R, cxd z, cxd w, cxd center = 0);

EquilibriumResult green_equilibrium(const std::vector<WeightedSample>& samples, cxd center,
                                    double R, const EquilibriumOptions& opts = {});
EquilibriumResult green_equilibrium(const CompactSet& set, cxd center, double R, int n,
                                    const EquilibriumOptions& opts = {});

struct CutoffResult {
  ScalarField chi;           // p_mu0 / I(mu0), clamped to [0,1]
  double c = 0;              // -2*pi / I(mu0)
  double quadrature_energy = 0; // \int |grad chi|^2 cross-check
  EquilibriumResult equilibrium;
};

CutoffResult equilibrium_cutoff(const CompactSet& set, cxd center, double R, int n,
                                double resolution);

// Robin constant c_Omega(z) via inversion: capacity of the image of the
// complement boundary under zeta -> 1/(zeta - z). The image of infinity is a
// single (polar) point and is omitted from the sample cloud.
double robin_constant(const Domain& domain, cxd z, int n = 256);

struct CapacityRadiusOptions {
  int centers_per_axis = 7;
  int ladder_size = 48;      // geometric s-ladder per center
  int cloud_grid = 18;       // subgrid for sampling the excluded set
  int max_cloud = 260;       // cap on excluded-cloud size
  EquilibriumOptions equilibrium{1e-7, 4000};
};

struct CapacityRadiusResult {
  double radius = 0;
  cxd center;
};

CapacityRadiusResult capacity_radius(const Domain& domain, double alpha,
                                     const CapacityRadiusOptions& opts = {});

// Weighted samples of closure(Delta(z,s)) \ Omega: grid samples of the
// positive-area part plus explicit samples of excised slits.
std::vector<WeightedSample> excluded_cloud(const Domain& domain, cxd z, double s,
                                           const CapacityRadiusOptions& opts = {});

// Sampled capacity of closure(Delta(z,s)) \ Omega (the excluded compact).
double excluded_set_capacity(const Domain& domain, cxd z, double s,
                             const CapacityRadiusOptions& opts = {});

} // namespace planarpot

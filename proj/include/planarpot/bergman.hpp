#pragma once

#include <Eigen/Dense>

#include "grid.hpp"

namespace planarpot {

struct BasisOptions {
  int degree = 40;          // monomial powers 0..degree about the center
  int laurent_degree = 16;  // negative powers per hole (multiply connected)
  int slit_degree = 8;      // branch terms per excised segment
  double pivot_tol = 1e-5;  // relative QR pivot cutoff (~1e-10 on the Gram)
  bool center_set = false;
  cxd center;               // defaults to the domain centroid
};

// Orthonormal holomorphic basis w.r.t. the grid inner product. Raw family:
// monomials (z-c)^k, Laurent powers (z-c_hole)^-m for holes, and inverse
// square-root branch elements w^j / sqrt(w^2-1) for excised slits (these are
// the L^2 singular elements adapted to a slit; plain Laurent poles on the
// slit are not square integrable).
class BergmanBasis {
public:
  BergmanBasis(GridPtr grid, const BasisOptions& opts);

  const GridPtr& grid() const { return grid_; }
  cxd center() const { return center_; }
  int rank() const { return rank_; }
  int raw_count() const { return int(terms_.size()); }
  int dropped() const { return raw_count() - rank_; }
  double condition_estimate() const { return condition_; }

  // orthonormal elements e_0..e_{rank-1} at an arbitrary point
  Eigen::VectorXcd eval(cxd z) const;

  cxd kernel(cxd z, cxd w) const;
  double kernel_diag(cxd z) const;

  // cells x rank matrix of e_k at the quadrature nodes (cached)
  const Eigen::MatrixXcd& values() const;

  // raw Gram matrix \int raw_j conj(raw_k) by quadrature (diagnostic)
  Eigen::MatrixXcd raw_gram() const;

  struct RawTerm {
    enum class Kind { Power, Laurent, SlitBranch } kind;
    int exponent = 0;
    cxd a, b; // Laurent center in a; slit endpoints in (a, b)
  };
  const std::vector<RawTerm>& terms() const { return terms_; }

private:
  Eigen::VectorXcd raw_eval(cxd z) const;

  GridPtr grid_;
  cxd center_;
  std::vector<RawTerm> terms_;
  Eigen::MatrixXcd coeff_; // raw_count x rank
  int rank_ = 0;
  double condition_ = 0;
  mutable Eigen::MatrixXcd values_cache_;
};

BergmanBasis build_basis(GridPtr grid, const BasisOptions& opts = {});

struct KernelMin {
  double value = 0;
  cxd argmin;
};

// Minimum of the kernel diagonal over grid nodes, one local 3x3 refinement
// pass, lexicographic tie-breaking.
KernelMin kernel_min(const BergmanBasis& basis);

struct PKernelResult {
  double value = 0; // |f(z)|^p at the maximizer
  bool converged = true;
  int iterations = 0;
};

// p-Bergman kernel K_{Omega,p}(z) over the basis span, 1 < p <= 2, via
// iteratively reweighted least squares.
PKernelResult p_kernel(const BergmanBasis& basis, cxd z, double p);

struct ComparisonFunctionals {
  double r_plus = 0, r_minus = 0, i_plus = 0, i_minus = 0;
};

ComparisonFunctionals comparison_functionals(const BergmanBasis& basis, cxd z, cxd w);

// coefficients <f, e_k> of the Bergman projection
Eigen::VectorXcd bergman_projection(const BergmanBasis& basis, const ComplexField& f);

struct BetaProbe {
  std::vector<double> resolutions;
  std::vector<double> values;  // \int |K(.,w)|^beta per resolution
  double growth_exponent = 0;  // log-log slope across the ladder
};

BetaProbe beta_norm_probe(const Domain& domain, cxd w, double beta,
                          const std::vector<double>& resolutions, const BasisOptions& opts = {});

} // namespace planarpot

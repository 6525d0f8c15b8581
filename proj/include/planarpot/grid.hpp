#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "geom.hpp"

namespace planarpot {

// Masked uniform quadrature grid over a domain. Cell centers inside the
// domain are kept; boundary cells carry 4x4-subsampled area fractions.
class QuadratureGrid {
public:
  QuadratureGrid(Domain domain, double resolution);

  const Domain& domain() const { return domain_; }
  double spacing() const { return h_; }
  double resolution() const { return resolution_; }
  int cell_count() const { return int(centers_.size()); }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  cxd center(int i) const { return centers_[i]; }
  double weight(int i) const { return weights_[i]; }
  double boundary_distance(int i) const { return bdist_[i]; }
  std::span<const cxd> centers() const { return centers_; }
  std::span<const double> weights() const { return weights_; }

  // lattice lookup: cell index at (ix, iy), or -1 outside the mask
  int cell_at(int ix, int iy) const {
    if (ix < 0 || ix >= nx_ || iy < 0 || iy >= ny_) return -1;
    return lattice_[size_t(iy) * nx_ + ix];
  }
  int cell_ix(int i) const { return ix_[i]; }
  int cell_iy(int i) const { return iy_[i]; }

  double total_weight() const;

private:
  Domain domain_;
  double resolution_, h_;
  int nx_ = 0, ny_ = 0;
  double ox_ = 0, oy_ = 0;
  std::vector<cxd> centers_;
  std::vector<double> weights_;
  std::vector<double> bdist_;
  std::vector<int> ix_, iy_;
  std::vector<int> lattice_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

GridPtr rasterize(const Domain& domain, double resolution);

struct ScalarField {
  GridPtr grid;
  std::vector<double> values;
};

struct ComplexField {
  GridPtr grid;
  std::vector<cxd> values;
};

// Fixed-order pairwise reduction; bit-reproducible regardless of chunking.
double pairwise_sum(std::span<const double> v);
cxd pairwise_sum(std::span<const cxd> v);

double integrate(const ScalarField& f);
cxd integrate(const ComplexField& f);

// L^p norm (\int |f|^p)^{1/p} with the grid weights
double lp_norm(const ComplexField& f, double p);
double l2_norm(const ComplexField& f);

// Central differences in the interior, one-sided at the mask edge.
std::pair<ScalarField, ScalarField> gradient(const ScalarField& f);
double gradient_energy(const ScalarField& f); // \int |grad f|^2

// dbar = (d/dx + i d/dy)/2
ComplexField dbar_derivative(const ComplexField& f);

ScalarField make_scalar_field(GridPtr grid, const std::function<double(cxd)>& fn);
ComplexField make_complex_field(GridPtr grid, const std::function<cxd(cxd)>& fn);

} // namespace planarpot

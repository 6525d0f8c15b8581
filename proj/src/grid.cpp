#include "planarpot/grid.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace planarpot {

QuadratureGrid::QuadratureGrid(Domain domain, double resolution)
    : domain_(std::move(domain)), resolution_(resolution) {
  if (resolution < 8) throw std::invalid_argument("rasterize: resolution must be >= 8");
  h_ = 1.0 / resolution;
  const Box bb = domain_.bounding_box();
  nx_ = int(std::ceil(bb.width() * resolution - 1e-9));
  ny_ = int(std::ceil(bb.height() * resolution - 1e-9));
  ox_ = bb.xmin;
  oy_ = bb.ymin;
  lattice_.assign(size_t(nx_) * ny_, -1);

  const double half_diag = h_ * std::numbers::sqrt2 / 2;
  for (int iy = 0; iy < ny_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) {
      const cxd c{ox_ + (ix + 0.5) * h_, oy_ + (iy + 0.5) * h_};
      const double d = domain_.boundary_distance(c);
      if (d <= 0.0) continue;
      double w;
      if (d > half_diag) {
        w = h_ * h_; // whole cell inside by Lipschitz bound
      } else {
        int inside = 0;
        for (int sy = 0; sy < 4; ++sy)
          for (int sx = 0; sx < 4; ++sx) {
            cxd s{c.real() + (sx - 1.5) * h_ / 4, c.imag() + (sy - 1.5) * h_ / 4};
            if (domain_.contains(s)) ++inside;
          }
        w = h_ * h_ * inside / 16.0;
      }
      lattice_[size_t(iy) * nx_ + ix] = int(centers_.size());
      centers_.push_back(c);
      weights_.push_back(w);
      bdist_.push_back(d);
      ix_.push_back(ix);
      iy_.push_back(iy);
    }
  }
  if (centers_.empty()) throw std::invalid_argument("rasterize: no interior cell at this resolution");
}

double QuadratureGrid::total_weight() const { return pairwise_sum(weights_); }

GridPtr rasterize(const Domain& domain, double resolution) {
  return std::make_shared<const QuadratureGrid>(domain, resolution);
}

namespace {

template <class T>
T pairwise_impl(const T* v, size_t n) {
  if (n <= 8) {
    T s{};
    for (size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const size_t half = n / 2;
  return pairwise_impl(v, half) + pairwise_impl(v + half, n - half);
}

void check_grid(const GridPtr& g, size_t n) {
  if (!g || n != size_t(g->cell_count()))
    throw std::invalid_argument("field does not match its grid");
}

} // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_impl(v.data(), v.size()); }
cxd pairwise_sum(std::span<const cxd> v) { return pairwise_impl(v.data(), v.size()); }

double integrate(const ScalarField& f) {
  check_grid(f.grid, f.values.size());
  std::vector<double> prod(f.values.size());
  for (size_t i = 0; i < prod.size(); ++i) prod[i] = f.values[i] * f.grid->weight(int(i));
  return pairwise_sum(prod);
}

cxd integrate(const ComplexField& f) {
  check_grid(f.grid, f.values.size());
  std::vector<cxd> prod(f.values.size());
  for (size_t i = 0; i < prod.size(); ++i) prod[i] = f.values[i] * f.grid->weight(int(i));
  return pairwise_sum(prod);
}

double lp_norm(const ComplexField& f, double p) {
  check_grid(f.grid, f.values.size());
  std::vector<double> prod(f.values.size());
  for (size_t i = 0; i < prod.size(); ++i)
    prod[i] = std::pow(std::abs(f.values[i]), p) * f.grid->weight(int(i));
  return std::pow(pairwise_sum(prod), 1.0 / p);
}

double l2_norm(const ComplexField& f) {
  check_grid(f.grid, f.values.size());
  std::vector<double> prod(f.values.size());
  for (size_t i = 0; i < prod.size(); ++i)
    prod[i] = std::norm(f.values[i]) * f.grid->weight(int(i));
  return std::sqrt(pairwise_sum(prod));
}

namespace {

// one-dimensional difference along a lattice direction
template <class T>
T diff1(const QuadratureGrid& g, const std::vector<T>& v, int i, int dx, int dy) {
  const int ix = g.cell_ix(i), iy = g.cell_iy(i);
  const int ip = g.cell_at(ix + dx, iy + dy);
  const int im = g.cell_at(ix - dx, iy - dy);
  const double h = g.spacing();
  if (ip >= 0 && im >= 0) return (v[ip] - v[im]) / (2 * h);
  if (ip >= 0) return (v[ip] - v[i]) / h;
  if (im >= 0) return (v[i] - v[im]) / h;
  return T{};
}

} // namespace

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f) {
  check_grid(f.grid, f.values.size());
  const auto& g = *f.grid;
  ScalarField dx{f.grid, std::vector<double>(f.values.size())};
  ScalarField dy{f.grid, std::vector<double>(f.values.size())};
  for (int i = 0; i < g.cell_count(); ++i) {
    dx.values[i] = diff1(g, f.values, i, 1, 0);
    dy.values[i] = diff1(g, f.values, i, 0, 1);
  }
  return {std::move(dx), std::move(dy)};
}

double gradient_energy(const ScalarField& f) {
  auto [dx, dy] = gradient(f);
  std::vector<double> prod(f.values.size());
  for (size_t i = 0; i < prod.size(); ++i)
    prod[i] = (dx.values[i] * dx.values[i] + dy.values[i] * dy.values[i]) * f.grid->weight(int(i));
  return pairwise_sum(prod);
}

ComplexField dbar_derivative(const ComplexField& f) {
  check_grid(f.grid, f.values.size());
  const auto& g = *f.grid;
  ComplexField out{f.grid, std::vector<cxd>(f.values.size())};
  for (int i = 0; i < g.cell_count(); ++i) {
    cxd fx = diff1(g, f.values, i, 1, 0);
    cxd fy = diff1(g, f.values, i, 0, 1);
    out.values[i] = 0.5 * (fx + cxd(0, 1) * fy);
  }
  return out;
}

ScalarField make_scalar_field(GridPtr grid, const std::function<double(cxd)>& fn) {
  ScalarField f{grid, std::vector<double>(grid->cell_count())};
  for (int i = 0; i < grid->cell_count(); ++i) f.values[i] = fn(grid->center(i));
  return f;
}

ComplexField make_complex_field(GridPtr grid, const std::function<cxd(cxd)>& fn) {
  ComplexField f{grid, std::vector<cxd>(grid->cell_count())};
  for (int i = 0; i < grid->cell_count(); ++i) f.values[i] = fn(grid->center(i));
  return f;
}

} // namespace planarpot

#include "planarpot/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace planarpot {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> prod(a.size());
  for (size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
  return pairwise_sum(prod);
}

// conjugate gradients for the (possibly diagonally weighted) FD Laplacian
int cg_solve(const QuadratureGrid& g, const std::vector<double>& b, std::vector<double>& x,
             double tol, int max_iter) {
  const int n = int(b.size());
  x.assign(n, 0.0);
  std::vector<double> r = b, p = b, ap(n);
  double rr = dot(r, r);
  const double b_norm2 = rr;
  if (b_norm2 == 0) return 0;
  int it = 0;
  for (; it < max_iter; ++it) {
    apply_laplacian(g, p, ap);
    double alpha = rr / dot(p, ap);
    for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (int i = 0; i < n; ++i) r[i] -= alpha * ap[i];
    double rr_new = dot(r, r);
    if (rr_new <= tol * tol * b_norm2) return it + 1;
    double beta = rr_new / rr;
    rr = rr_new;
    for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  return it;
}

} // namespace

void apply_laplacian(const QuadratureGrid& g, const std::vector<double>& x,
                     std::vector<double>& out) {
  const int n = g.cell_count();
  out.resize(n);
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  for (int i = 0; i < n; ++i) {
    const int ix = g.cell_ix(i), iy = g.cell_iy(i);
    // a missing neighbor is the odd reflection -u_i: u vanishes on the cell
    // face between the masked and unmasked cell, not one spacing further out
    double acc = 4.0 * x[i];
    if (int j = g.cell_at(ix + 1, iy); j >= 0) acc -= x[j]; else acc += x[i];
    if (int j = g.cell_at(ix - 1, iy); j >= 0) acc -= x[j]; else acc += x[i];
    if (int j = g.cell_at(ix, iy + 1); j >= 0) acc -= x[j]; else acc += x[i];
    if (int j = g.cell_at(ix, iy - 1); j >= 0) acc -= x[j]; else acc += x[i];
    out[i] = acc * inv_h2;
  }
}

EigenResult dirichlet_lambda1(const GridPtr& grid) {
  const auto& g = *grid;
  const int n = g.cell_count();
  if (n < 1) throw std::invalid_argument("dirichlet_lambda1: empty grid");

  std::vector<double> x(n, 1.0), y(n), ax(n);
  double lambda = 0;
  EigenResult res;
  const int max_outer = 60;
  for (int it = 0; it < max_outer; ++it) {
    res.iterations = it + 1;
    int used = cg_solve(g, x, y, 1e-10, 20000);
    if (used == 0) throw std::runtime_error("dirichlet_lambda1: CG breakdown");
    double nrm = std::sqrt(dot(y, y));
    for (int i = 0; i < n; ++i) y[i] /= nrm;
    apply_laplacian(g, y, ax);
    lambda = dot(y, ax);
    double rnorm = 0;
    for (int i = 0; i < n; ++i) {
      double r = ax[i] - lambda * y[i];
      rnorm += r * r;
    }
    rnorm = std::sqrt(rnorm);
    x = y;
    if (rnorm <= 1e-8 * lambda) break;
  }
  // sign fix and weighted L^2 normalization
  double mass = pairwise_sum(std::span<const double>(x));
  if (mass < 0)
    for (auto& v : x) v = -v;
  ScalarField field{grid, std::move(x)};
  std::vector<double> sq(n);
  for (int i = 0; i < n; ++i) sq[i] = field.values[i] * field.values[i] * g.weight(i);
  double l2 = std::sqrt(pairwise_sum(sq));
  for (auto& v : field.values) v /= l2;
  apply_laplacian(g, field.values, ax);
  double fn2 = dot(field.values, field.values);
  lambda = dot(field.values, ax) / fn2;
  double rnorm = 0;
  for (int i = 0; i < n; ++i) {
    double r = ax[i] - lambda * field.values[i];
    rnorm += r * r;
  }
  res.residual = std::sqrt(rnorm) / (lambda * std::sqrt(fn2));
  res.value = lambda;
  res.field = std::move(field);
  return res;
}

HardyResult hardy_constant(const GridPtr& grid, double clamp_factor) {
  const auto& g = *grid;
  const int n = g.cell_count();
  const double clamp = clamp_factor * g.spacing();
  // Hardy weight: cell average of 1/delta^2 across the cell width,
  // 1/(d^2 - h^2/4); boundary-layer cells (d < h) get the regularized value
  // 1/(clamp_factor h^2), the one calibration constant of the scheme.
  const double h = g.spacing();
  std::vector<double> m(n);
  for (int i = 0; i < n; ++i) {
    double d = g.boundary_distance(i);
    m[i] = d >= h ? 1.0 / (d * d - h * h / 4) : 1.0 / (clamp * h);
  }

  std::vector<double> x(n, 1.0), y(n), mx(n), ax(n);
  double lambda = 0;
  EigenResult eres;
  for (int it = 0; it < 100; ++it) {
    eres.iterations = it + 1;
    for (int i = 0; i < n; ++i) mx[i] = m[i] * x[i];
    if (cg_solve(g, mx, y, 1e-10, 20000) == 0)
      throw std::runtime_error("hardy_constant: CG breakdown");
    // normalize in the M inner product
    double mn = 0;
    for (int i = 0; i < n; ++i) mn += m[i] * y[i] * y[i];
    mn = std::sqrt(mn);
    for (int i = 0; i < n; ++i) y[i] /= mn;
    apply_laplacian(g, y, ax);
    double num = dot(y, ax), den = 0;
    for (int i = 0; i < n; ++i) den += m[i] * y[i] * y[i];
    lambda = num / den;
    double rnorm = 0, mnorm = 0;
    for (int i = 0; i < n; ++i) {
      double r = ax[i] - lambda * m[i] * y[i];
      rnorm += r * r;
      mnorm += m[i] * y[i] * m[i] * y[i];
    }
    x = y;
    if (std::sqrt(rnorm) <= 1e-8 * lambda * std::sqrt(mnorm)) break;
  }
  double mass = pairwise_sum(std::span<const double>(x));
  if (mass < 0)
    for (auto& v : x) v = -v;
  eres.value = lambda;
  std::vector<double> sq(n);
  for (int i = 0; i < n; ++i) sq[i] = x[i] * x[i] * g.weight(i);
  double l2 = std::sqrt(pairwise_sum(sq));
  for (auto& v : x) v /= l2;
  // residual in the pencil sense
  apply_laplacian(g, x, ax);
  double rnorm = 0, mnorm = 0;
  for (int i = 0; i < n; ++i) {
    double r = ax[i] - lambda * m[i] * x[i];
    rnorm += r * r;
    mnorm += m[i] * x[i] * m[i] * x[i];
  }
  eres.residual = std::sqrt(rnorm) / (lambda * std::sqrt(mnorm));
  eres.field = ScalarField{grid, std::move(x)};
  HardyResult out;
  out.h = std::sqrt(lambda);
  out.eigen = std::move(eres);
  return out;
}

double rayleigh_quotient(const ScalarField& f) {
  const auto& g = *f.grid;
  double fn = dot(f.values, f.values);
  if (fn == 0) throw std::invalid_argument("rayleigh_quotient: zero field");
  std::vector<double> ax;
  apply_laplacian(g, f.values, ax);
  return dot(f.values, ax) / fn;
}

MsTestResult ms_test_function(const GridPtr& grid, cxd center, double alpha, double r,
                              const MsParams& params) {
  const auto& g = *grid;
  const Domain& dom = g.domain();
  const double e_half = std::exp(0.5);
  MsTestResult out;
  out.r1 = params.r1_factor * e_half * alpha * r;
  out.r2 = params.r2_factor * e_half * alpha * r;
  out.R = params.R_over_r * r;
  if (!(out.r1 < out.r2 && out.r2 < r))
    throw std::invalid_argument("ms_test_function: cutoff radii must satisfy r1 < r2 < r");

  // sample the excluded compact closure(Delta(center,r)) \ Omega
  std::vector<WeightedSample> cloud = excluded_cloud(dom, center, r);

  auto eta = [&](cxd z) {
    double d = std::abs(z - center);
    if (d <= out.r1) return 1.0;
    if (d >= out.r2) return 0.0;
    return (out.r2 - d) / (out.r2 - out.r1);
  };

  ScalarField phi{grid, std::vector<double>(g.cell_count(), 0.0)};
  if (cloud.empty()) {
    out.excluded_empty = true;
    for (int i = 0; i < g.cell_count(); ++i) phi.values[i] = eta(g.center(i));
  } else {
    auto eq = green_equilibrium(cloud, center, out.R);
    for (int i = 0; i < g.cell_count(); ++i) {
      const cxd z = g.center(i);
      double e = eta(z);
      if (e == 0.0) continue;
      double chi = std::clamp(eq.potential(z) / eq.energy, 0.0, 1.0);
      phi.values[i] = (1.0 - chi) * e;
    }
  }
  out.quotient = rayleigh_quotient(phi);
  out.phi = std::move(phi);
  return out;
}

} // namespace planarpot

#include "planarpot/bergman.hpp"

#include <functional>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace planarpot {

namespace {

// sqrt((w-1)(w+1)) with the branch cut exactly on [-1,1], ~ w at infinity
cxd slit_sqrt(cxd w) { return std::sqrt(w - 1.0) * std::sqrt(w + 1.0); }

} // namespace

BergmanBasis::BergmanBasis(GridPtr grid, const BasisOptions& opts) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("build_basis: null grid");
  if (opts.degree < 0) throw std::invalid_argument("build_basis: degree must be >= 0");
  const Domain& dom = grid_->domain();
  center_ = opts.center_set ? opts.center : dom.centroid();

  for (int k = 0; k <= opts.degree; ++k)
    terms_.push_back({RawTerm::Kind::Power, k, {}, {}});
  for (cxd hc : dom.hole_centers())
    for (int m = 1; m <= opts.laurent_degree; ++m)
      terms_.push_back({RawTerm::Kind::Laurent, m, hc, {}});
  for (const auto& [a, b] : dom.slits())
    for (int j = 0; j < opts.slit_degree; ++j)
      terms_.push_back({RawTerm::Kind::SlitBranch, j, a, b});

  const int T = int(terms_.size());
  if (grid_->cell_count() < T)
    throw std::invalid_argument("build_basis: grid too coarse for the basis size");

  // Quadrature nodes for the Gram assembly: the grid cells, except that
  // cells near an excised slit are refined by a quadtree down to a fraction
  // of the slit length. The singular branch elements carry L^2 mass (growing
  // like log of the slit length) inside a collar thinner than one cell; a
  // uniform grid misses it and the slit-length dependence of the kernel
  // would stall at the resolution scale.
  const auto slits = dom.slits();
  std::vector<std::pair<cxd, double>> nodes;
  nodes.reserve(grid_->cell_count());
  if (slits.empty()) {
    for (int i = 0; i < grid_->cell_count(); ++i)
      nodes.emplace_back(grid_->center(i), grid_->weight(i));
  } else {
    const double h = grid_->spacing();
    double min_len = std::numeric_limits<double>::max();
    for (const auto& [a, b] : slits) min_len = std::min(min_len, std::abs(b - a));
    const double s_min = std::max(min_len / 8, h * std::pow(2.0, -14));
    auto slit_distance = [&](cxd z) {
      double d = std::numeric_limits<double>::max();
      for (const auto& [a, b] : slits) d = std::min(d, point_segment_distance(z, a, b));
      return d;
    };
    std::function<void(cxd, double)> refine = [&](cxd c, double s) {
      if (slit_distance(c) > 1.5 * s || s <= s_min) {
        if (dom.boundary_distance(c) > 0) nodes.emplace_back(c, s * s);
        return;
      }
      const double q = s / 4;
      refine(c + cxd(-q, -q), s / 2);
      refine(c + cxd(q, -q), s / 2);
      refine(c + cxd(-q, q), s / 2);
      refine(c + cxd(q, q), s / 2);
    };
    for (int i = 0; i < grid_->cell_count(); ++i) {
      const cxd c = grid_->center(i);
      const double w = grid_->weight(i);
      if (slit_distance(c) <= 1.5 * h && w > 0.999 * h * h)
        refine(c, h);
      else
        nodes.emplace_back(c, w);
    }
  }

  const int N = int(nodes.size());
  // weighted Vandermonde, column-scaled for pivoting
  Eigen::MatrixXcd B(N, T);
  for (int i = 0; i < N; ++i) {
    const double sw = std::sqrt(nodes[i].second);
    Eigen::VectorXcd row = raw_eval(nodes[i].first);
    for (int t = 0; t < T; ++t) B(i, t) = sw * row(t);
  }
  Eigen::VectorXd scale(T);
  for (int t = 0; t < T; ++t) {
    double nrm = B.col(t).norm();
    scale(t) = nrm > 0 ? nrm : 1.0;
    B.col(t) /= scale(t);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(B);
  const Eigen::MatrixXcd& R = qr.matrixR();
  const double r0 = std::abs(R(0, 0));
  int rank = 0;
  while (rank < T && std::abs(R(rank, rank)) > opts.pivot_tol * r0) ++rank;
  rank_ = rank;
  condition_ = r0 / std::max(std::abs(R(rank - 1, rank - 1)), 1e-300);

  // e = raw * coeff with coeff = D^-1 P [R11^-1; 0]
  Eigen::MatrixXcd Rinv = R.topLeftCorner(rank, rank)
                              .triangularView<Eigen::Upper>()
                              .solve(Eigen::MatrixXcd::Identity(rank, rank));
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(T, rank);
  const auto& perm = qr.colsPermutation().indices();
  for (int j = 0; j < rank; ++j) {
    // pivot position j holds raw column perm(j)
    C.row(perm(j)) = Rinv.row(j);
  }
  for (int t = 0; t < T; ++t) C.row(t) /= scale(t);
  coeff_ = std::move(C);
}

Eigen::VectorXcd BergmanBasis::raw_eval(cxd z) const {
  Eigen::VectorXcd out(terms_.size());
  const cxd zc = z - center_;
  cxd pw = 1.0;
  int last_power = -1;
  for (size_t t = 0; t < terms_.size(); ++t) {
    const RawTerm& term = terms_[t];
    switch (term.kind) {
      case RawTerm::Kind::Power:
        if (term.exponent == last_power + 1) {
          if (term.exponent > 0) pw *= zc;
        } else {
          pw = std::pow(zc, term.exponent);
        }
        last_power = term.exponent;
        out(t) = pw;
        break;
      case RawTerm::Kind::Laurent:
        out(t) = std::pow(z - term.a, -term.exponent);
        break;
      case RawTerm::Kind::SlitBranch: {
        const cxd mid = 0.5 * (term.a + term.b);
        const cxd half = 0.5 * (term.b - term.a);
        const cxd w = (z - mid) / half;
        out(t) = std::pow(w, term.exponent) / slit_sqrt(w);
        break;
      }
    }
  }
  return out;
}

Eigen::VectorXcd BergmanBasis::eval(cxd z) const {
  return coeff_.transpose() * raw_eval(z);
}

cxd BergmanBasis::kernel(cxd z, cxd w) const {
  if (!grid_->domain().contains(z) || !grid_->domain().contains(w))
    throw std::invalid_argument("kernel: evaluation point outside the domain");
  Eigen::VectorXcd ez = eval(z), ew = eval(w);
  return ew.dot(ez); // sum_k e_k(z) conj(e_k(w))
}

double BergmanBasis::kernel_diag(cxd z) const {
  if (!grid_->domain().contains(z))
    throw std::invalid_argument("kernel_diag: evaluation point outside the domain");
  return eval(z).squaredNorm();
}

const Eigen::MatrixXcd& BergmanBasis::values() const {
  if (values_cache_.size() == 0) {
    const int N = grid_->cell_count();
    values_cache_.resize(N, rank_);
    for (int i = 0; i < N; ++i) values_cache_.row(i) = eval(grid_->center(i)).transpose();
  }
  return values_cache_;
}

Eigen::MatrixXcd BergmanBasis::raw_gram() const {
  const int T = int(terms_.size());
  const int N = grid_->cell_count();
  Eigen::MatrixXcd B(N, T);
  for (int i = 0; i < N; ++i)
    B.row(i) = std::sqrt(grid_->weight(i)) * raw_eval(grid_->center(i)).transpose();
  return B.adjoint() * B;
}

BergmanBasis build_basis(GridPtr grid, const BasisOptions& opts) {
  return BergmanBasis(std::move(grid), opts);
}

KernelMin kernel_min(const BergmanBasis& basis) {
  const auto& g = *basis.grid();
  const Eigen::MatrixXcd& V = basis.values();
  KernelMin best{std::numeric_limits<double>::max(), 0};
  for (int i = 0; i < g.cell_count(); ++i) {
    double k = V.row(i).squaredNorm();
    cxd z = g.center(i);
    const bool lex_smaller = z.real() < best.argmin.real() ||
                             (z.real() == best.argmin.real() && z.imag() < best.argmin.imag());
    if (k < best.value || (k == best.value && lex_smaller)) {
      best.value = k;
      best.argmin = z;
    }
  }
  // one local 3x3 subgrid refinement at spacing h/3
  const double h3 = g.spacing() / 3;
  KernelMin refined = best;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      cxd z = best.argmin + cxd(dx * h3, dy * h3);
      if (!g.domain().contains(z)) continue;
      double k = basis.kernel_diag(z);
      if (k < refined.value) {
        refined.value = k;
        refined.argmin = z;
      }
    }
  return refined;
}

PKernelResult p_kernel(const BergmanBasis& basis, cxd z, double p) {
  if (p <= 1.0 || p > 2.0) throw std::invalid_argument("p_kernel: need 1 < p <= 2");
  if (!basis.grid()->domain().contains(z))
    throw std::invalid_argument("p_kernel: point outside the domain");
  const auto& g = *basis.grid();
  const Eigen::MatrixXcd& V = basis.values();
  const int N = g.cell_count(), r = basis.rank();

  Eigen::VectorXcd ez = basis.eval(z);
  // start from the p=2 maximizer f = K(.,z)/sqrt(K(z,z))
  Eigen::VectorXcd c = ez.conjugate() / ez.norm();

  auto p_normalize = [&](Eigen::VectorXcd& coef, const Eigen::VectorXcd& f) {
    std::vector<double> tmp(N);
    for (int i = 0; i < N; ++i) tmp[i] = std::pow(std::abs(f(i)), p) * g.weight(i);
    double nrm = std::pow(pairwise_sum(tmp), 1.0 / p);
    coef /= nrm;
    return nrm;
  };

  PKernelResult res;
  double prev = 0;
  Eigen::VectorXcd f = V * c;
  p_normalize(c, f);
  for (int it = 0; it < 500; ++it) {
    res.iterations = it + 1;
    f = V * c;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(r, r);
    for (int i = 0; i < N; ++i) {
      double om = std::pow(std::max(std::abs(f(i)), 1e-10), p - 2.0) * g.weight(i);
      G.noalias() += om * V.row(i).adjoint() * V.row(i);
    }
    c = G.ldlt().solve(ez.conjugate());
    f = V * c;
    p_normalize(c, f);
    double val = std::abs((ez.transpose() * c)(0, 0));
    if (it > 0 && std::abs(val - prev) <= 1e-7 * std::max(1.0, std::abs(val))) {
      res.value = std::pow(val, p);
      res.converged = true;
      return res;
    }
    prev = val;
  }
  res.value = std::pow(prev, p);
  res.converged = false;
  return res;
}

ComparisonFunctionals comparison_functionals(const BergmanBasis& basis, cxd z, cxd w) {
  const double kz = basis.kernel_diag(z), kw = basis.kernel_diag(w);
  const cxd kzw = basis.kernel(z, w);
  ComparisonFunctionals out;
  out.r_plus = kz + kw + 2 * kzw.real();
  out.r_minus = kz + kw - 2 * kzw.real();
  out.i_plus = kz + kw + 2 * kzw.imag();
  out.i_minus = kz + kw - 2 * kzw.imag();
  return out;
}

Eigen::VectorXcd bergman_projection(const BergmanBasis& basis, const ComplexField& f) {
  const auto& g = *basis.grid();
  if (f.grid.get() != basis.grid().get())
    throw std::invalid_argument("bergman_projection: field grid does not match the basis grid");
  const Eigen::MatrixXcd& V = basis.values();
  Eigen::VectorXcd wf(g.cell_count());
  for (int i = 0; i < g.cell_count(); ++i) wf(i) = f.values[i] * g.weight(i);
  return V.adjoint() * wf;
}

BetaProbe beta_norm_probe(const Domain& domain, cxd w, double beta,
                          const std::vector<double>& resolutions, const BasisOptions& opts) {
  if (beta < 2.0) throw std::invalid_argument("beta_norm_probe: need beta >= 2");
  BetaProbe probe;
  for (double res : resolutions) {
    auto grid = rasterize(domain, res);
    BergmanBasis basis(grid, opts);
    const Eigen::MatrixXcd& V = basis.values();
    Eigen::VectorXcd ew = basis.eval(w);
    std::vector<double> vals(grid->cell_count());
    for (int i = 0; i < grid->cell_count(); ++i) {
      cxd k = (V.row(i) * ew.conjugate())(0, 0); // K(zeta_i, w)
      vals[i] = std::pow(std::abs(k), beta) * grid->weight(i);
    }
    probe.resolutions.push_back(res);
    probe.values.push_back(pairwise_sum(vals));
  }
  // least-squares slope of log(value) against log(resolution)
  const size_t n = probe.values.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    double x = std::log(probe.resolutions[i]);
    double y = std::log(std::max(probe.values[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  probe.growth_exponent = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return probe;
}

} // namespace planarpot

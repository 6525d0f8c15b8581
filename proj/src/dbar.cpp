#include "planarpot/dbar.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace planarpot {

namespace {
constexpr double kPi = std::numbers::pi;
}

ComplexField cauchy_transform(const ComplexField& v) {
  const auto& g = *v.grid;
  const int N = g.cell_count();
  ComplexField u{v.grid, std::vector<cxd>(N)};
  std::vector<cxd> src(N);
  for (int j = 0; j < N; ++j) src[j] = v.values[j] * g.weight(j) / kPi;
  for (int i = 0; i < N; ++i) {
    const cxd zi = g.center(i);
    cxd acc = 0;
    for (int j = 0; j < N; ++j) {
      if (j == i) continue; // exact integral of 1/(z-zeta) over the centered cell is 0
      acc += src[j] / (zi - g.center(j));
    }
    u.values[i] = acc;
  }
  return u;
}

ComplexField canonical_solution(const BergmanBasis& basis, const ComplexField& v) {
  ComplexField uc = cauchy_transform(v);
  Eigen::VectorXcd c = bergman_projection(basis, uc);
  const Eigen::MatrixXcd& V = basis.values();
  ComplexField u0{uc.grid, std::vector<cxd>(uc.values.size())};
  for (size_t i = 0; i < u0.values.size(); ++i)
    u0.values[i] = uc.values[i] - (V.row(int(i)) * c)(0, 0);
  return u0;
}

WeightedEstimateRow weighted_estimate_check(const BergmanBasis& basis, const ComplexField& v,
                                            double alpha, double h_omega) {
  const double limit = 2 * h_omega / 3;
  if (alpha <= 0 || alpha >= limit)
    throw std::invalid_argument("weighted_estimate_check: alpha must lie in (0, " +
                                std::to_string(limit) + ")");
  const auto& g = *v.grid;
  ComplexField u0 = canonical_solution(basis, v);
  std::vector<double> lhs_terms(g.cell_count()), rhs_terms(g.cell_count());
  for (int i = 0; i < g.cell_count(); ++i) {
    const double d = g.boundary_distance(i);
    lhs_terms[i] = std::norm(u0.values[i]) * std::pow(d, alpha) * g.weight(i);
    rhs_terms[i] = std::norm(v.values[i]) * std::pow(d, 2 + alpha) * g.weight(i);
  }
  WeightedEstimateRow row;
  row.alpha = alpha;
  row.h_omega = h_omega;
  row.constant = 16 * h_omega * h_omega / std::pow(2 * h_omega - 3 * alpha, 2);
  row.lhs = pairwise_sum(lhs_terms);
  row.rhs = row.constant * pairwise_sum(rhs_terms);
  row.ratio = row.lhs / row.rhs;
  return row;
}

std::vector<LpEstimateRow> lp_estimate_check(const BergmanBasis& basis, const ComplexField& v,
                                             const std::vector<double>& p_ladder) {
  const auto& g = *v.grid;
  ComplexField u0 = canonical_solution(basis, v);
  std::vector<double> abs_terms(g.cell_count());
  for (int i = 0; i < g.cell_count(); ++i)
    abs_terms[i] = std::abs(v.values[i]) * g.weight(i);
  const double v_l1 = pairwise_sum(abs_terms);
  const double area = g.domain().area();

  std::vector<LpEstimateRow> rows;
  for (double p : p_ladder) {
    if (p <= 1 || p >= 2) throw std::invalid_argument("lp_estimate_check: p must lie in (1,2)");
    LpEstimateRow row;
    row.p = p;
    row.u_lp = lp_norm(u0, p);
    row.v_l1 = v_l1;
    const double shape = std::pow(2 - p, -0.5) * std::pow(area, 1.0 / p - 0.5);
    row.implied_c0 = row.u_lp / (shape * v_l1);
    rows.push_back(row);
  }
  return rows;
}

BoundaryDecayResult boundary_decay(const BergmanBasis& basis, cxd w, int ladder) {
  const auto& g = *basis.grid();
  const Eigen::MatrixXcd& V = basis.values();
  Eigen::VectorXcd ew = basis.eval(w).conjugate();
  const double eps0 = 0.5 * g.domain().inradius();

  BoundaryDecayResult out;
  for (int k = 0; k < ladder; ++k) {
    const double eps = eps0 * std::pow(0.5, k);
    std::vector<double> terms;
    for (int i = 0; i < g.cell_count(); ++i) {
      if (g.boundary_distance(i) > eps) continue;
      cxd kk = (V.row(i) * ew)(0, 0);
      terms.push_back(std::norm(kk) * g.weight(i));
    }
    if (terms.size() < 8) {
      out.ladder_truncated = true;
      break;
    }
    out.epsilons.push_back(eps);
    out.collar_integrals.push_back(pairwise_sum(terms));
  }
  const size_t n = out.epsilons.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    double x = std::log(out.epsilons[i]);
    double y = std::log(std::max(out.collar_integrals[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return out;
}

ComplexField bump_field(GridPtr grid, cxd c, double rho, cxd amplitude) {
  return make_complex_field(grid, [c, rho, amplitude](cxd z) -> cxd {
    const double t2 = std::norm(z - c) / (rho * rho);
    if (t2 >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - t2));
  });
}

} // namespace planarpot

#include "planarpot/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace planarpot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& w) {
  std::vector<double> u = w;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0, theta = 0;
  int rho = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / double(i + 1);
    if (u[i] - t > 0) {
      rho = int(i + 1);
      theta = t;
    }
  }
  (void)rho;
  for (auto& x : w) x = std::max(0.0, x - theta);
}

struct EnergyProblem {
  // symmetric off-diagonal kernel matrix (row-major n*n, diagonal slot holds
  // the self-energy term; kNegInf-free: excluded diagonals hold 0 with a flag)
  std::vector<double> K;
  std::vector<char> has_diag;
  int n = 0;

  double energy(const std::vector<double>& w) const {
    double e = 0;
    for (int i = 0; i < n; ++i) {
      const double* row = &K[size_t(i) * n];
      double s = 0;
      for (int j = 0; j < n; ++j) s += row[j] * w[j];
      e += w[i] * s;
    }
    return e;
  }
  void grad(const std::vector<double>& w, std::vector<double>& g) const {
    for (int i = 0; i < n; ++i) {
      const double* row = &K[size_t(i) * n];
      double s = 0;
      for (int j = 0; j < n; ++j) s += row[j] * w[j];
      g[i] = 2 * s;
    }
  }
};

// Projected-gradient ascent with Armijo backtracking; deterministic.
EquilibriumResult maximize_energy(EnergyProblem prob, std::vector<cxd> support,
                                  const EquilibriumOptions& opts) {
  const int n = prob.n;
  EquilibriumResult res;
  std::vector<double> w(n, 1.0 / n), g(n), trial(n);
  double e = prob.energy(w);

  // conservative initial step from the kernel magnitude
  double kmax = 1e-12;
  for (double v : prob.K) kmax = std::max(kmax, std::abs(v));
  double step = 0.5 / kmax;

  int it = 0;
  bool converged = false;
  for (; it < opts.max_iterations; ++it) {
    prob.grad(w, g);
    // projected-gradient stationarity measure
    trial = w;
    for (int i = 0; i < n; ++i) trial[i] += g[i];
    project_simplex(trial);
    double pg = 0;
    for (int i = 0; i < n; ++i) pg = std::max(pg, std::abs(trial[i] - w[i]));
    if (pg <= opts.grad_tol * (1.0 + std::abs(e))) {
      converged = true;
      break;
    }

    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      trial = w;
      for (int i = 0; i < n; ++i) trial[i] += step * g[i];
      project_simplex(trial);
      double inner = 0;
      for (int i = 0; i < n; ++i) inner += g[i] * (trial[i] - w[i]);
      double e_trial = prob.energy(trial);
      if (e_trial >= e + 1e-4 * inner - 1e-15) {
        if (std::abs(e_trial - e) <= 1e-15 * (1 + std::abs(e)) && inner <= 1e-14) {
          w = trial;
          e = e_trial;
          converged = true;
        } else {
          w = trial;
          e = e_trial;
          step *= 1.25;
        }
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || converged) {
      converged = converged || !accepted;
      break;
    }
  }

  res.measure.support = std::move(support);
  res.measure.weights = std::move(w);
  res.energy = e;
  res.capacity = std::exp(e);
  res.converged = converged;
  res.iterations = it;
  return res;
}

// self-energy of a uniform unit mass on a segment of length ell
double segment_self_energy(double ell) { return std::log(ell) - 1.5; }

} // namespace

double EquilibriumResult::potential(cxd z) const {
  double p = 0;
  for (size_t j = 0; j < measure.support.size(); ++j) {
    double k;
    if (kernel == EnergyKernel::Logarithmic) {
      double d = std::abs(z - measure.support[j]);
      k = d > 0 ? std::log(d) : kNegInf;
    } else {
      k = green_function_disk(green_radius, z, measure.support[j], green_center);
    }
    p += measure.weights[j] * k;
  }
  return p;
}

EquilibriumResult log_equilibrium(const std::vector<WeightedSample>& samples,
                                  const EquilibriumOptions& opts) {
  const int n = int(samples.size());
  if (n == 0) throw std::invalid_argument("log_equilibrium: empty sample cloud");
  if (n == 1) {
    // a single point is polar
    EquilibriumResult res;
    res.measure.support = {samples[0].point};
    res.measure.weights = {1.0};
    res.energy = kNegInf;
    res.capacity = 0.0;
    return res;
  }
  EnergyProblem prob;
  prob.n = n;
  prob.K.assign(size_t(n) * n, 0.0);
  prob.has_diag.assign(n, 0);
  bool degenerate = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = std::abs(samples[i].point - samples[j].point);
      if (d > 1e-12) degenerate = false;
      double v = std::log(std::max(d, 1e-300));
      prob.K[size_t(i) * n + j] = v;
      prob.K[size_t(j) * n + i] = v;
    }
    if (samples[i].length > 0) {
      prob.K[size_t(i) * n + i] = segment_self_energy(samples[i].length);
      prob.has_diag[i] = 1;
    }
  }
  if (degenerate) {
    EquilibriumResult res;
    res.measure.support.reserve(n);
    for (const auto& s : samples) res.measure.support.push_back(s.point);
    res.measure.weights.assign(n, 1.0 / n);
    res.energy = kNegInf;
    res.capacity = 0.0;
    return res;
  }
  std::vector<cxd> support;
  support.reserve(n);
  for (const auto& s : samples) support.push_back(s.point);
  auto res = maximize_energy(std::move(prob), std::move(support), opts);
  res.kernel = EnergyKernel::Logarithmic;
  return res;
}

EquilibriumResult log_equilibrium(const CompactSet& set, int n, const EquilibriumOptions& opts) {
  if (set.is_empty()) {
    EquilibriumResult res;
    res.energy = kNegInf;
    res.capacity = 0.0;
    return res;
  }
  if (n < 2) throw std::invalid_argument("log_equilibrium: need n >= 2");
  return log_equilibrium(set.sample(n), opts);
}

double green_function_disk(double R, cxd z, cxd w, cxd center) {
  z -= center;
  w -= center;
  if (std::abs(z) >= R || std::abs(w) >= R)
    throw std::invalid_argument("green_function_disk: points must lie inside the disk");
  const double d = std::abs(z - w);
  if (d == 0.0) return kNegInf;
  return std::log(R * d / std::abs(R * R - z * std::conj(w)));
}

EquilibriumResult green_equilibrium(const std::vector<WeightedSample>& samples, cxd center,
                                    double R, const EquilibriumOptions& opts) {
  const int n = int(samples.size());
  if (n == 0) throw std::invalid_argument("green_equilibrium: empty sample cloud");
  for (const auto& s : samples)
    if (std::abs(s.point - center) >= R)
      throw std::invalid_argument("green_equilibrium: set touches the disk boundary");
  EnergyProblem prob;
  prob.n = n;
  prob.K.assign(size_t(n) * n, 0.0);
  prob.has_diag.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const cxd zi = samples[i].point - center;
    for (int j = i + 1; j < n; ++j) {
      const cxd zj = samples[j].point - center;
      double d = std::abs(zi - zj);
      double v = std::log(std::max(R * d, 1e-300) / std::abs(R * R - zi * std::conj(zj)));
      prob.K[size_t(i) * n + j] = v;
      prob.K[size_t(j) * n + i] = v;
    }
    if (samples[i].length > 0) {
      // log-singular part from the local segment + smooth Green remainder
      double smooth = std::log(R / (R * R - std::norm(zi)));
      prob.K[size_t(i) * n + i] = segment_self_energy(samples[i].length) + smooth;
      prob.has_diag[i] = 1;
    }
  }
  std::vector<cxd> support;
  support.reserve(n);
  for (const auto& s : samples) support.push_back(s.point);
  auto res = maximize_energy(std::move(prob), std::move(support), opts);
  res.kernel = EnergyKernel::Green;
  res.green_center = center;
  res.green_radius = R;
  if (n == 1 && samples[0].length == 0) {
    res.energy = kNegInf;
    res.capacity = 0.0;
  }
  return res;
}

EquilibriumResult green_equilibrium(const CompactSet& set, cxd center, double R, int n,
                                    const EquilibriumOptions& opts) {
  if (set.is_empty()) {
    EquilibriumResult res;
    res.kernel = EnergyKernel::Green;
    res.green_center = center;
    res.green_radius = R;
    res.energy = kNegInf;
    res.capacity = 0.0;
    return res;
  }
  return green_equilibrium(set.sample(n), center, R, opts);
}

CutoffResult equilibrium_cutoff(const CompactSet& set, cxd center, double R, int n,
                                double resolution) {
  auto eq = green_equilibrium(set, center, R, n);
  if (!(eq.energy < 0))
    throw std::runtime_error("equilibrium_cutoff: nonnegative Green energy");
  auto grid = rasterize(Domain::disk(center, R), resolution);
  ScalarField chi{grid, std::vector<double>(grid->cell_count())};
  for (int i = 0; i < grid->cell_count(); ++i) {
    double p = eq.potential(grid->center(i));
    chi.values[i] = std::clamp(p / eq.energy, 0.0, 1.0);
  }
  CutoffResult out;
  out.c = -2 * kPi / eq.energy;
  out.quadrature_energy = gradient_energy(chi);
  out.chi = std::move(chi);
  out.equilibrium = std::move(eq);
  return out;
}

double robin_constant(const Domain& domain, cxd z, int n) {
  if (!domain.contains(z)) throw std::invalid_argument("robin_constant: point outside domain");
  auto boundary = domain.boundary_sample(n);
  std::vector<WeightedSample> image;
  image.reserve(boundary.size() + 1);
  for (const auto& s : boundary) {
    const cxd d = s.point - z;
    const double r2 = std::norm(d);
    if (r2 < 1e-24) continue;
    image.push_back({1.0 / d, s.length / r2});
  }
  // The image of infinity is the single point 0. A lone point is polar and
  // cannot change the capacity, but as a zero-length sample it would offer the
  // discrete maximizer a spurious zero-energy point mass (capacity 1) whenever
  // the image capacity is below 1 -- so it is deliberately left out.
  if (image.size() < 2) return 0.0;
  return log_equilibrium(image).capacity;
}

std::vector<WeightedSample> excluded_cloud(const Domain& domain, cxd z, double s,
                                           const CapacityRadiusOptions& opts) {
  const int m = opts.cloud_grid;
  const double step = 2 * s / m;
  std::vector<WeightedSample> cloud;
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      cxd p = z + cxd((ix + 0.5) * step - s, (iy + 0.5) * step - s);
      if (std::abs(p - z) <= s && !domain.contains(p)) cloud.push_back({p, step});
    }
  // excised slits have zero area and are invisible to the grid test
  for (const auto& [a, b] : domain.slits()) {
    const int k = 4 * m;
    for (const auto& ws : CompactSet::segment(a, b).sample(k))
      if (std::abs(ws.point - z) <= s) cloud.push_back(ws);
  }
  if (int(cloud.size()) > opts.max_cloud) {
    // decimate deterministically, keep coverage
    std::vector<WeightedSample> kept;
    const double stride = double(cloud.size()) / opts.max_cloud;
    for (int i = 0; i < opts.max_cloud; ++i) kept.push_back(cloud[size_t(i * stride)]);
    cloud = std::move(kept);
  }
  return cloud;
}

double excluded_set_capacity(const Domain& domain, cxd z, double s,
                             const CapacityRadiusOptions& opts) {
  auto cloud = excluded_cloud(domain, z, s, opts);
  if (cloud.size() <= 1) return 0.0;
  return log_equilibrium(cloud, opts.equilibrium).capacity;
}

CapacityRadiusResult capacity_radius(const Domain& domain, double alpha,
                                     const CapacityRadiusOptions& opts) {
  if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("capacity_radius: need 0 < alpha < 1");
  const Box bb = domain.bounding_box();
  std::vector<cxd> centers;
  const int m = opts.centers_per_axis;
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      cxd z{bb.xmin + (ix + 0.5) * bb.width() / m, bb.ymin + (iy + 0.5) * bb.height() / m};
      if (domain.contains(z)) centers.push_back(z);
    }
  if (cxd c = domain.centroid(); domain.contains(c)) centers.push_back(c);

  const double s_max = domain.diameter();
  const double s_min = 0.01 * s_max;
  const double ratio = std::pow(s_max / s_min, 1.0 / (opts.ladder_size - 1));

  CapacityRadiusResult best;
  for (cxd z : centers) {
    const double dz = domain.boundary_distance(z);
    double r_ok = 0;
    for (int k = 0; k < opts.ladder_size; ++k) {
      const double s = s_min * std::pow(ratio, k);
      if (s <= dz) {
        r_ok = s; // excluded set empty, capacity 0
        continue;
      }
      double cap = excluded_set_capacity(domain, z, s, opts);
      if (cap <= alpha * s)
        r_ok = s;
      else
        break;
    }
    if (r_ok > best.radius) {
      best.radius = r_ok;
      best.center = z;
    }
  }
  return best;
}

} // namespace planarpot

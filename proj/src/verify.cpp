#include "planarpot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace planarpot {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fmt_point(cxd z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.4f%+.4fi", z.real(), z.imag());
  return buf;
}

ReportRow make_row(std::string id, std::string domain, std::string params, double lhs,
                   double rhs, double tol, std::string res) {
  ReportRow row;
  row.inequality = std::move(id);
  row.domain = std::move(domain);
  row.parameters = std::move(params);
  row.lhs = lhs;
  row.rhs = rhs;
  row.margin = lhs - rhs;
  row.tolerance = tol;
  row.pass = std::isfinite(lhs) && std::isfinite(rhs) &&
             row.margin >= -tol * std::max({std::abs(lhs), std::abs(rhs), 1e-12});
  row.resolutions = std::move(res);
  return row;
}

ReportRow error_row(std::string id, std::string domain, const std::string& what) {
  ReportRow row;
  row.inequality = std::move(id);
  row.domain = std::move(domain);
  row.parameters = "error=" + what;
  row.lhs = row.rhs = row.margin = std::nan("");
  row.pass = false;
  return row;
}

// cell of maximal boundary distance (incenter proxy), lexicographic ties
int incenter_cell(const QuadratureGrid& g) {
  int best = 0;
  for (int i = 1; i < g.cell_count(); ++i) {
    if (g.boundary_distance(i) > g.boundary_distance(best)) best = i;
  }
  return best;
}

// k cells with boundary distance >= frac * max, spread evenly in index order
std::vector<int> spread_cells(const QuadratureGrid& g, int k, double frac) {
  double dmax = 0;
  for (int i = 0; i < g.cell_count(); ++i) dmax = std::max(dmax, g.boundary_distance(i));
  std::vector<int> pool;
  for (int i = 0; i < g.cell_count(); ++i)
    if (g.boundary_distance(i) >= frac * dmax) pool.push_back(i);
  std::vector<int> out;
  const int n = int(pool.size());
  for (int j = 0; j < k; ++j) out.push_back(pool[size_t(j) * (n - 1) / std::max(k - 1, 1)]);
  return out;
}

// fraction of the disk B(x,r) lying outside the domain, 24x24 subsample
double outside_fraction(const Domain& dom, cxd x, double r) {
  const int m = 24;
  int in_ball = 0, outside = 0;
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      cxd p = x + cxd((2.0 * ix + 1) / m - 1.0, (2.0 * iy + 1) / m - 1.0) * r;
      if (std::abs(p - x) > r) continue;
      ++in_ball;
      if (!dom.contains(p)) ++outside;
    }
  return in_ball ? double(outside) / in_ball : 0.0;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
}

struct DomainData {
  Domain dom;
  GridPtr grid;              // kernel-resolution grid
  std::optional<BergmanBasis> basis;
  double kappa = std::nan("");
  GridPtr egrid;             // eigen-resolution grid
  double lambda1 = std::nan("");
  double hardy = std::nan("");
  std::map<double, CapacityRadiusResult> radius; // by alpha
};

} // namespace

std::vector<Domain> default_corpus() {
  std::vector<Domain> corpus;
  corpus.push_back(Domain::disk(0, 1).labeled("disk"));
  corpus.push_back(Domain::rectangle(0, 1, 0, 1).labeled("square"));
  corpus.push_back(Domain::annulus(0, 0.5, 1).labeled("annulus"));
  corpus.push_back(
      Domain::subtract(Domain::disk(0, 1), CompactSet::segment(0, 0.75)).labeled("slit_disk"));
  corpus.push_back(Domain::rectangle(0, 2, 0, 1).labeled("rectangle"));
  return corpus;
}

std::vector<ReportRow> run_suite(const std::vector<Domain>& corpus, const SuiteConfig& config) {
  if (corpus.empty()) throw std::invalid_argument("run_suite: empty corpus");
  std::vector<ReportRow> rows;
  const std::string res_k = fmt(config.resolution);
  const std::string res_e = fmt(config.eigen_resolution);
  const std::string res_ke = res_k + "," + res_e;

  std::vector<DomainData> data;
  for (const Domain& dom : corpus) {
    DomainData d{dom};
    try {
      d.grid = rasterize(dom, config.resolution);
      BasisOptions bopts;
      bopts.degree = config.degree;
      d.basis.emplace(d.grid, bopts);
      d.kappa = kernel_min(*d.basis).value;
      d.egrid = rasterize(dom, config.eigen_resolution);
      d.lambda1 = dirichlet_lambda1(d.egrid).value;
      d.hardy = hardy_constant(d.egrid).h;
      for (double alpha : config.alphas)
        d.radius[alpha] = capacity_radius(dom, alpha, config.radius);
    } catch (const std::exception& e) {
      rows.push_back(error_row("setup", dom.label(), e.what()));
    }
    data.push_back(std::move(d));
  }

  for (const DomainData& d : data) {
    const std::string& label = d.dom.label();
    if (!d.basis) continue;

    // pointwise kernel lower bound by the squared Robin constant over pi
    for (int i : spread_cells(*d.grid, 10, 0.5)) {
      cxd z = d.grid->center(i);
      try {
        double lhs = d.basis->kernel_diag(z);
        double c = robin_constant(d.dom, z, config.capacity_samples);
        rows.push_back(make_row("blocki", label, "z=" + fmt_point(z), lhs, c * c / kPi, 0.02,
                                res_k));
      } catch (const std::exception& e) {
        rows.push_back(error_row("blocki", label, e.what()));
      }
    }

    // kernel infimum vs the capacity radius
    for (double alpha : config.alphas) {
      try {
        const auto& rr = d.radius.at(alpha);
        double rhs = alpha * alpha / (kPi * rr.radius * rr.radius);
        rows.push_back(make_row("capacity_radius_bound", label, "alpha=" + fmt(alpha), d.kappa,
                                rhs, 0.05, res_k));
      } catch (const std::exception& e) {
        rows.push_back(error_row("capacity_radius_bound", label, e.what()));
      }
    }

    // kappa / lambda1 ratio (records the empirical spectral constant)
    rows.push_back(make_row("kernel_eigenvalue_ratio", label, "ratio=" + fmt(d.kappa / d.lambda1),
                            d.kappa / d.lambda1, 0.0, 0.0, res_ke));

    // test-function certificate: quotient bounds the discrete lambda1 from
    // above; the product with the capacity radius squared is recorded
    try {
      const double alpha = 0.3;
      const auto& rr = d.radius.at(alpha);
      const double r = 0.75 * rr.radius;
      auto ms = ms_test_function(d.egrid, rr.center, alpha, r);
      double discrete_l1 = dirichlet_lambda1(d.egrid).value;
      rows.push_back(make_row(
          "ms_certificate", label,
          "alpha=" + fmt(alpha) + ";r=" + fmt(r) + ";CxR2=" + fmt(ms.quotient * rr.radius * rr.radius),
          ms.quotient, discrete_l1 - 1e-6, 0.0, res_e));
    } catch (const std::exception& e) {
      rows.push_back(error_row("ms_certificate", label, e.what()));
    }

    // planar volume-ratio eigenvalue bound
    for (double t : {0.25, 0.5, 1.0}) {
      try {
        const double r = t * d.dom.inradius();
        double frac = 1.0;
        const int step = std::max(1, d.grid->cell_count() / 200);
        for (int i = 0; i < d.grid->cell_count(); i += step)
          frac = std::min(frac, outside_fraction(d.dom, d.grid->center(i), r));
        rows.push_back(make_row("volume_ratio_bound", label, "r=" + fmt(r), d.lambda1,
                                frac / (2 * r * r), 0.05, res_e));
      } catch (const std::exception& e) {
        rows.push_back(error_row("volume_ratio_bound", label, e.what()));
      }
    }

    // collar decay of |K(.,w)|^2 near the boundary
    try {
      cxd w = d.grid->center(incenter_cell(*d.grid));
      auto decay = boundary_decay(*d.basis, w);
      const double h_eff = 0.9 * d.hardy;
      rows.push_back(make_row("collar_decay", label, "w=" + fmt_point(w), decay.slope,
                              2 * h_eff / 3 - 0.1, 0.0, res_ke));
    } catch (const std::exception& e) {
      rows.push_back(error_row("collar_decay", label, e.what()));
    }
  }

  // weighted dbar estimate and the L^p shape audit on the smooth-ish subset
  for (const DomainData& d : data) {
    const std::string& label = d.dom.label();
    if (!d.basis) continue;
    if (label != "disk" && label != "square" && label != "annulus") continue;
    const double h_eff = 0.9 * d.hardy;
    std::vector<std::pair<cxd, double>> bumps;
    for (int i : spread_cells(*d.grid, 3, 0.6))
      bumps.emplace_back(d.grid->center(i), 0.5 * d.grid->boundary_distance(i));

    for (size_t b = 0; b < bumps.size(); ++b) {
      ComplexField v = bump_field(d.grid, bumps[b].first, bumps[b].second);
      for (double frac : {0.2, 0.8}) {
        const double alpha = frac * 2 * h_eff / 3;
        try {
          auto chk = weighted_estimate_check(*d.basis, v, alpha, h_eff);
          rows.push_back(make_row("weighted_dbar", label,
                                  "bump=" + fmt_point(bumps[b].first) + ";alpha=" + fmt(alpha),
                                  chk.rhs, chk.lhs, 0.05, res_k));
        } catch (const std::exception& e) {
          rows.push_back(error_row("weighted_dbar", label, e.what()));
        }
      }
      if (b == 0) {
        try {
          auto lp_rows = lp_estimate_check(*d.basis, v, config.p_ladder);
          for (const auto& lr : lp_rows)
            rows.push_back(make_row("lp_shape", label,
                                    "p=" + fmt(lr.p) + ";implied_c0=" + fmt(lr.implied_c0),
                                    lr.implied_c0, 0.0, 0.0, res_k));
        } catch (const std::exception& e) {
          rows.push_back(error_row("lp_shape", label, e.what()));
        }
      }
    }
  }

  // kernel comparison functionals grow under excision (slit disk vs disk)
  try {
    const DomainData* disk = nullptr;
    const DomainData* slit = nullptr;
    for (const DomainData& d : data) {
      if (d.dom.label() == "disk") disk = &d;
      if (d.dom.label() == "slit_disk") slit = &d;
    }
    if (disk && disk->basis && slit && slit->basis) {
      const std::vector<std::pair<cxd, cxd>> pairs = {
          {cxd(0.1, 0.5), cxd(-0.3, -0.2)}, {cxd(-0.5, 0.3), cxd(0.2, -0.6)},
          {cxd(0.4, 0.4), cxd(-0.1, 0.6)},  {cxd(-0.2, -0.5), cxd(0.5, 0.1)},
          {cxd(0.0, 0.65), cxd(0.3, -0.4)}};
      double mr_p = 1e300, mr_m = 1e300, mi_p = 1e300, mi_m = 1e300;
      for (auto [z, w] : pairs) {
        auto fd = comparison_functionals(*disk->basis, z, w);
        auto fs = comparison_functionals(*slit->basis, z, w);
        mr_p = std::min(mr_p, fs.r_plus - fd.r_plus);
        mr_m = std::min(mr_m, fs.r_minus - fd.r_minus);
        mi_p = std::min(mi_p, fs.i_plus - fd.i_plus);
        mi_m = std::min(mi_m, fs.i_minus - fd.i_minus);
      }
      rows.push_back(make_row("comparison_monotone", "slit_disk", "functional=r_plus", mr_p,
                              0.0, 0.02, res_k));
      rows.push_back(make_row("comparison_monotone", "slit_disk", "functional=r_minus", mr_m,
                              0.0, 0.02, res_k));
      rows.push_back(make_row("comparison_monotone", "slit_disk", "functional=i_plus", mi_p,
                              0.0, 0.02, res_k));
      rows.push_back(make_row("comparison_monotone", "slit_disk", "functional=i_minus", mi_m,
                              0.0, 0.02, res_k));
    }
  } catch (const std::exception& e) {
    rows.push_back(error_row("comparison_monotone", "slit_disk", e.what()));
  }

  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.inequality, a.domain, a.parameters) <
           std::tie(b.inequality, b.domain, b.parameters);
  });
  return rows;
}

double c0_estimate(const std::vector<Domain>& corpus, const SuiteConfig& config) {
  double c0 = 1e300;
  for (const Domain& dom : corpus) {
    auto grid = rasterize(dom, config.resolution);
    BasisOptions bopts;
    bopts.degree = config.degree;
    BergmanBasis basis(grid, bopts);
    double kappa = kernel_min(basis).value;
    double l1 = dirichlet_lambda1(rasterize(dom, config.eigen_resolution)).value;
    c0 = std::min(c0, kappa / l1);
  }
  return c0;
}

ExcisionSweepResult excision_sweep(const Domain& domain, cxd z, cxd w, int steps,
                                   const SuiteConfig& config) {
  ExcisionSweepResult out;
  out.z = z;
  out.w = w;
  auto grid = rasterize(domain, config.resolution);
  BasisOptions bopts;
  bopts.degree = config.degree;
  BergmanBasis base(grid, bopts);
  const cxd k0 = base.kernel(z, w);
  const cxd mid = domain.centroid();

  double r0 = 1e300;
  for (int k = 1; k <= steps; ++k) {
    const double len = std::pow(4.0, 1 - k);
    CompactSet seg = CompactSet::segment(mid - len / 2, mid + len / 2);
    Domain cut = Domain::subtract(domain, seg);
    if (k == 1)
      r0 = std::min(cut.boundary_distance(z), cut.boundary_distance(w));
    ExcisionRow row;
    row.excised_length = len;
    row.capacity = log_equilibrium(seg, 256).capacity;
    auto cut_grid = rasterize(cut, config.resolution);
    BergmanBasis cut_basis(cut_grid, bopts);
    row.difference = std::abs(cut_basis.kernel(z, w) - k0);
    out.rows.push_back(row);
  }
  out.r0 = r0;

  std::vector<double> xs, ys;
  for (const auto& row : out.rows) {
    if (row.difference <= 0 || row.capacity <= 0) continue;
    const double ratio = out.r0 / row.capacity;
    if (ratio <= 1.0) continue; // log log undefined at or below r0
    xs.push_back(std::log(std::log(ratio)));
    ys.push_back(std::log(row.difference));
  }
  out.fitted_exponent = -fit_slope(xs, ys);

  Domain pointless = Domain::subtract(domain, CompactSet::point_cloud({mid}));
  BergmanBasis point_basis(rasterize(pointless, config.resolution), bopts);
  out.point_difference = std::abs(point_basis.kernel(z, w) - k0);
  return out;
}

void svg_heatmap(const ScalarField& f, const std::string& path) {
  const auto& g = *f.grid;
  double lo = 1e300, hi = -1e300;
  for (double v : f.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= lo) hi = lo + 1;
  const Box bb = g.domain().bounding_box();
  const double h = g.spacing();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(bb.xmin) << " "
      << fmt(-bb.ymax) << " " << fmt(bb.width()) << " " << fmt(bb.height()) << "\">\n";
  svg << "<rect x=\"" << fmt(bb.xmin) << "\" y=\"" << fmt(-bb.ymax) << "\" width=\""
      << fmt(bb.width()) << "\" height=\"" << fmt(bb.height()) << "\" fill=\"#ffffff\"/>\n";
  for (int i = 0; i < g.cell_count(); ++i) {
    const double t = (f.values[i] - lo) / (hi - lo);
    // blue -> white -> red ramp
    int r, gg, b;
    if (t < 0.5) {
      r = int(std::lround(510 * t));
      gg = r;
      b = 255;
    } else {
      r = 255;
      gg = int(std::lround(510 * (1 - t)));
      b = gg;
    }
    char color[8];
    std::snprintf(color, sizeof color, "#%02x%02x%02x", r, gg, b);
    const cxd c = g.center(i);
    svg << "<rect x=\"" << fmt(c.real() - h / 2) << "\" y=\"" << fmt(-c.imag() - h / 2)
        << "\" width=\"" << fmt(h) << "\" height=\"" << fmt(h) << "\" fill=\"" << color
        << "\"/>\n";
  }
  svg << "</svg>\n";

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("svg_heatmap: cannot write " + path);
  os << svg.str();
}

namespace {

nlohmann::json row_to_json(const ReportRow& r) {
  return {{"inequality", r.inequality}, {"domain", r.domain},   {"parameters", r.parameters},
          {"lhs", fmt(r.lhs)},          {"rhs", fmt(r.rhs)},    {"margin", fmt(r.margin)},
          {"tolerance", fmt(r.tolerance)}, {"pass", r.pass},    {"resolutions", r.resolutions}};
}

} // namespace

void emit_report_csv(const std::vector<ReportRow>& rows, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("emit_report_csv: cannot write " + path);
  os << "inequality,domain,parameters,lhs,rhs,margin,tolerance,pass,resolutions\n";
  for (const auto& r : rows)
    os << r.inequality << ',' << r.domain << ',' << r.parameters << ',' << fmt(r.lhs) << ','
       << fmt(r.rhs) << ',' << fmt(r.margin) << ',' << fmt(r.tolerance) << ','
       << (r.pass ? "true" : "false") << ',' << r.resolutions << '\n';
}

void emit_report_json(const std::vector<ReportRow>& rows, const std::string& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) j.push_back(row_to_json(r));
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("emit_report_json: cannot write " + path);
  os << j.dump(2) << '\n';
}

std::vector<ReportRow> parse_report_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("parse_report_json: cannot read " + path);
  nlohmann::json j = nlohmann::json::parse(is);
  std::vector<ReportRow> rows;
  for (const auto& jr : j) {
    ReportRow r;
    r.inequality = jr.at("inequality").get<std::string>();
    r.domain = jr.at("domain").get<std::string>();
    r.parameters = jr.at("parameters").get<std::string>();
    r.lhs = std::stod(jr.at("lhs").get<std::string>());
    r.rhs = std::stod(jr.at("rhs").get<std::string>());
    r.margin = std::stod(jr.at("margin").get<std::string>());
    r.tolerance = std::stod(jr.at("tolerance").get<std::string>());
    r.pass = jr.at("pass").get<bool>();
    r.resolutions = jr.at("resolutions").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

} // namespace planarpot

// Command-line front end: every library operation reachable from the shell.
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "planarpot/verify.hpp"

using namespace planarpot;
using nlohmann::json;

namespace {

Domain load_domain(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read domain file " + path);
  return Domain::from_json(json::parse(is));
}

CompactSet load_compact(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read compact-set file " + path);
  return CompactSet::from_json(json::parse(is));
}

cxd parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("point", "expected x,y");
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

// strict config: known keys only, applied over the defaults
SuiteConfig parse_config(const std::string& path) {
  SuiteConfig cfg;
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config file " + path);
  json j = json::parse(is);
  for (const auto& [key, value] : j.items()) {
    if (key == "resolution") cfg.resolution = value.get<double>();
    else if (key == "eigen_resolution") cfg.eigen_resolution = value.get<double>();
    else if (key == "degree") cfg.degree = value.get<int>();
    else if (key == "alphas") cfg.alphas = value.get<std::vector<double>>();
    else if (key == "p_ladder") cfg.p_ladder = value.get<std::vector<double>>();
    else if (key == "capacity_samples") cfg.capacity_samples = value.get<int>();
    else throw std::runtime_error("unknown config key \"" + key + "\"");
  }
  return cfg;
}

std::vector<Domain> load_corpus(const std::string& spec) {
  if (spec == "default") return default_corpus();
  std::ifstream is(spec);
  if (!is) throw std::runtime_error("cannot read corpus file " + spec);
  std::vector<Domain> corpus;
  for (const auto& jd : json::parse(is)) corpus.push_back(Domain::from_json(jd));
  return corpus;
}

ScalarField log_diag_field(const BergmanBasis& basis) {
  const auto& g = *basis.grid();
  ScalarField f{basis.grid(), std::vector<double>(g.cell_count())};
  const auto& V = basis.values();
  for (int i = 0; i < g.cell_count(); ++i)
    f.values[i] = std::log(std::max(V.row(i).squaredNorm(), 1e-300));
  return f;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"planarpot: Bergman kernels, capacities and spectral bounds on planar domains"};
  app.require_subcommand(1);

  std::string domain_file, set_file, out_file, json_file, figs_dir, corpus = "default";
  std::string eval_point, point_b, config_file, svg_file, bump_spec;
  double resolution = 128, alpha = 0.3, p_value = 0;
  int degree = 40, samples = 256, steps = 6;
  bool want_min = false;

  auto* kernel = app.add_subcommand("kernel", "Bergman kernel of a domain");
  kernel->add_option("--domain", domain_file, "domain JSON file")->required();
  kernel->add_option("--degree", degree, "polynomial degree (default 40)");
  kernel->add_option("--resolution", resolution, "grid resolution (default 128)");
  kernel->add_option("--eval", eval_point, "print the kernel diagonal at x,y");
  kernel->add_flag("--min", want_min, "print the diagonal minimum and its argmin");
  kernel->add_option("--heatmap", svg_file, "write a log-scale diagonal heatmap SVG");

  auto* capacity = app.add_subcommand("capacity", "logarithmic capacity of a compact set");
  capacity->add_option("--set", set_file, "compact-set JSON file")->required();
  capacity->add_option("--samples", samples, "sample count (default 256)");

  auto* robin = app.add_subcommand("robin", "Robin constant of a domain at a point");
  robin->add_option("--domain", domain_file, "domain JSON file")->required();
  robin->add_option("--point", eval_point, "evaluation point x,y")->required();
  robin->add_option("--samples", samples, "boundary sample count (default 256)");

  auto* radius = app.add_subcommand("radius", "interior capacity radius");
  radius->add_option("--domain", domain_file, "domain JSON file")->required();
  radius->add_option("--alpha", alpha, "capacity fraction (default 0.3)");

  auto* eigen = app.add_subcommand("eigen", "smallest Dirichlet eigenvalue");
  eigen->add_option("--domain", domain_file, "domain JSON file")->required();
  eigen->add_option("--resolution", resolution, "grid resolution (default 128)");
  eigen->add_option("--svg", svg_file, "write the eigenfunction heatmap SVG");

  auto* hardy = app.add_subcommand("hardy", "Hardy constant");
  hardy->add_option("--domain", domain_file, "domain JSON file")->required();
  hardy->add_option("--resolution", resolution, "grid resolution (default 128)");
  hardy->add_option("--svg", svg_file, "write the minimizer heatmap SVG");

  auto* dbar = app.add_subcommand("dbar", "weighted and L^p dbar estimate tables");
  dbar->add_option("--domain", domain_file, "domain JSON file")->required();
  dbar->add_option("--resolution", resolution, "grid resolution (default 128)");
  dbar->add_option("--degree", degree, "basis degree (default 40)");
  dbar->add_option("--bump", bump_spec, "bump datum x,y,rho (default: inradius cell)");
  dbar->add_option("--alpha", alpha, "weight exponent; 0 picks 0.5*(2h/3)")->default_val(0.0);
  dbar->add_option("--p", p_value, "single p in (1,2) for the L^p row; 0 runs the ladder");
  dbar->add_option("--out", out_file, "write rows as CSV (default: stdout)");

  auto* verify = app.add_subcommand("verify", "run the inequality suite over a corpus");
  verify->add_option("--corpus", corpus, "\"default\" or a corpus JSON file");
  verify->add_option("--out", out_file, "CSV report path")->required();
  verify->add_option("--json", json_file, "JSON report path");
  verify->add_option("--figs", figs_dir, "directory for SVG figures");
  verify->add_option("--config", config_file, "suite config JSON (strict keys)");

  auto* sweep = app.add_subcommand("sweep", "kernel excision sweep");
  sweep->add_option("--domain", domain_file, "domain JSON file")->required();
  sweep->add_option("--z", eval_point, "probe point x,y")->required();
  sweep->add_option("--w", point_b, "probe point x,y")->required();
  sweep->add_option("--steps", steps, "ladder length (default 6)");
  sweep->add_option("--out", out_file, "write the table as CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e); // help text, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (*kernel) {
      BasisOptions opts;
      opts.degree = degree;
      BergmanBasis basis(rasterize(load_domain(domain_file), resolution), opts);
      if (!eval_point.empty())
        std::printf("%.6f\n", basis.kernel_diag(parse_point(eval_point)));
      if (want_min) {
        auto km = kernel_min(basis);
        std::printf("%.6e at %.6f,%.6f\n", km.value, km.argmin.real(), km.argmin.imag());
      }
      if (!svg_file.empty()) svg_heatmap(log_diag_field(basis), svg_file);
    } else if (*capacity) {
      auto eq = log_equilibrium(load_compact(set_file), samples);
      if (!eq.converged) {
        std::fprintf(stderr, "equilibrium solver did not converge (%d iterations)\n",
                     eq.iterations);
        return 1;
      }
      std::printf("%.6f\n", eq.capacity);
    } else if (*robin) {
      std::printf("%.6f\n",
                  robin_constant(load_domain(domain_file), parse_point(eval_point), samples));
    } else if (*radius) {
      auto rr = capacity_radius(load_domain(domain_file), alpha);
      std::printf("%.6f at %.6f,%.6f\n", rr.radius, rr.center.real(), rr.center.imag());
    } else if (*eigen) {
      auto er = dirichlet_lambda1(rasterize(load_domain(domain_file), resolution));
      std::printf("%.6f (residual %.2e, %d iterations)\n", er.value, er.residual,
                  er.iterations);
      if (!svg_file.empty()) svg_heatmap(er.field, svg_file);
    } else if (*hardy) {
      auto hr = hardy_constant(rasterize(load_domain(domain_file), resolution));
      std::printf("%.6f\n", hr.h);
      if (!svg_file.empty()) svg_heatmap(hr.eigen.field, svg_file);
    } else if (*dbar) {
      auto grid = rasterize(load_domain(domain_file), resolution);
      BasisOptions opts;
      opts.degree = degree;
      BergmanBasis basis(grid, opts);
      const double h = 0.9 * hardy_constant(grid).h;
      cxd c;
      double rho = 0;
      if (bump_spec.empty()) {
        int best = 0;
        for (int i = 0; i < grid->cell_count(); ++i)
          if (grid->boundary_distance(i) > grid->boundary_distance(best)) best = i;
        c = grid->center(best);
        rho = 0.5 * grid->boundary_distance(best);
      } else {
        auto c1 = bump_spec.find(','), c2 = bump_spec.rfind(',');
        if (c1 == std::string::npos || c2 == c1)
          throw CLI::ValidationError("--bump", "expected x,y,rho");
        c = {std::stod(bump_spec.substr(0, c1)), std::stod(bump_spec.substr(c1 + 1, c2 - c1 - 1))};
        rho = std::stod(bump_spec.substr(c2 + 1));
      }
      ComplexField v = bump_field(grid, c, rho);
      const double a = alpha > 0 ? alpha : 0.5 * (2 * h / 3);
      auto row = weighted_estimate_check(basis, v, a, h);
      std::vector<double> ladder =
          p_value > 0 ? std::vector<double>{p_value} : std::vector<double>{1.5, 1.7, 1.9, 1.95, 1.99};
      auto lp_rows = lp_estimate_check(basis, v, ladder);
      std::ostringstream os;
      os << "check,alpha_or_p,lhs,rhs_or_v_l1,ratio_or_implied_c0\n";
      char buf[160];
      std::snprintf(buf, sizeof buf, "weighted,%.6e,%.6e,%.6e,%.6e\n", row.alpha, row.lhs,
                    row.rhs, row.ratio);
      os << buf;
      for (const auto& lr : lp_rows) {
        std::snprintf(buf, sizeof buf, "lp,%.6e,%.6e,%.6e,%.6e\n", lr.p, lr.u_lp, lr.v_l1,
                      lr.implied_c0);
        os << buf;
      }
      if (out_file.empty()) {
        std::cout << os.str();
      } else {
        std::ofstream ofs(out_file, std::ios::binary);
        ofs << os.str();
      }
    } else if (*verify) {
      SuiteConfig cfg = config_file.empty() ? SuiteConfig{} : parse_config(config_file);
      auto corpus_domains = load_corpus(corpus);
      auto rows = run_suite(corpus_domains, cfg);
      emit_report_csv(rows, out_file);
      if (!json_file.empty()) emit_report_json(rows, json_file);
      if (!figs_dir.empty()) {
        std::filesystem::create_directories(figs_dir);
        for (const auto& dom : corpus_domains) {
          BasisOptions opts;
          opts.degree = cfg.degree;
          BergmanBasis basis(rasterize(dom, cfg.resolution), opts);
          svg_heatmap(log_diag_field(basis), figs_dir + "/kernel_" + dom.label() + ".svg");
        }
      }
      int failures = 0;
      for (const auto& r : rows) failures += !r.pass;
      std::fprintf(stderr, "%zu rows, %d failing\n", rows.size(), failures);
    } else if (*sweep) {
      auto result = excision_sweep(load_domain(domain_file), parse_point(eval_point),
                                   parse_point(point_b), steps);
      std::ostringstream os;
      os << "excised_length,capacity,difference\n";
      char buf[120];
      for (const auto& r : result.rows) {
        std::snprintf(buf, sizeof buf, "%.6e,%.6e,%.6e\n", r.excised_length, r.capacity,
                      r.difference);
        os << buf;
      }
      std::snprintf(buf, sizeof buf, "# fitted_exponent=%.6e point_difference=%.6e r0=%.6e\n",
                    result.fitted_exponent, result.point_difference, result.r0);
      os << buf;
      if (out_file.empty()) {
        std::cout << os.str();
      } else {
        std::ofstream ofs(out_file, std::ios::binary);
        ofs << os.str();
      }
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

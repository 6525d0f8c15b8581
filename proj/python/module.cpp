#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "planarpot/verify.hpp"

namespace py = pybind11;
using namespace planarpot;

PYBIND11_MODULE(_planarpot, m) {
  m.doc() = "planar potential theory: Bergman kernels, capacities, spectral bounds";

  py::class_<CompactSet>(m, "CompactSet")
      .def_static("segment", &CompactSet::segment)
      .def_static("closed_disk", &CompactSet::closed_disk)
      .def_static("point_cloud", &CompactSet::point_cloud)
      .def("contains", &CompactSet::contains)
      .def("distance", &CompactSet::distance)
      .def("diameter", &CompactSet::diameter)
      .def("to_json", [](const CompactSet& s) { return s.to_json().dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return CompactSet::from_json(nlohmann::json::parse(s)); });

  py::class_<Domain>(m, "Domain")
      .def_static("disk", &Domain::disk)
      .def_static("annulus", &Domain::annulus)
      .def_static("rectangle", &Domain::rectangle)
      .def_static("polygon", &Domain::polygon)
      .def_static("subtract", &Domain::subtract)
      .def("labeled", &Domain::labeled)
      .def_property_readonly("label", &Domain::label)
      .def("contains", &Domain::contains)
      .def("boundary_distance", &Domain::boundary_distance)
      .def("area", &Domain::area)
      .def("diameter", &Domain::diameter)
      .def("inradius", &Domain::inradius)
      .def("centroid", &Domain::centroid)
      .def("to_json", [](const Domain& d) { return d.to_json().dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return Domain::from_json(nlohmann::json::parse(s)); });

  py::class_<BergmanBasis>(m, "BergmanBasis")
      .def(py::init([](const Domain& dom, double resolution, int degree) {
             BasisOptions opts;
             opts.degree = degree;
             return BergmanBasis(rasterize(dom, resolution), opts);
           }),
           py::arg("domain"), py::arg("resolution") = 128.0, py::arg("degree") = 40)
      .def_property_readonly("rank", &BergmanBasis::rank)
      .def("kernel", &BergmanBasis::kernel)
      .def("kernel_diag", &BergmanBasis::kernel_diag);

  m.def("kernel_min", [](const BergmanBasis& b) {
    auto km = kernel_min(b);
    return py::make_tuple(km.value, km.argmin);
  });

  m.def(
      "log_capacity",
      [](const CompactSet& set, int n) { return log_equilibrium(set, n).capacity; },
      py::arg("set"), py::arg("samples") = 256);
  m.def(
      "green_capacity",
      [](const CompactSet& set, cxd center, double R, int n) {
        return green_equilibrium(set, center, R, n).capacity;
      },
      py::arg("set"), py::arg("center"), py::arg("radius"), py::arg("samples") = 256);
  m.def("robin_constant", &robin_constant, py::arg("domain"), py::arg("z"),
        py::arg("samples") = 256);
  m.def(
      "capacity_radius",
      [](const Domain& dom, double alpha) {
        auto rr = capacity_radius(dom, alpha);
        return py::make_tuple(rr.radius, rr.center);
      },
      py::arg("domain"), py::arg("alpha"));
  m.def(
      "lambda1",
      [](const Domain& dom, double resolution) {
        return dirichlet_lambda1(rasterize(dom, resolution)).value;
      },
      py::arg("domain"), py::arg("resolution") = 128.0);
  m.def(
      "hardy_constant",
      [](const Domain& dom, double resolution) {
        return hardy_constant(rasterize(dom, resolution)).h;
      },
      py::arg("domain"), py::arg("resolution") = 128.0);
  m.def(
      "excision_sweep",
      [](const Domain& dom, cxd z, cxd w, int steps) {
        auto s = excision_sweep(dom, z, w, steps);
        py::list rows;
        for (const auto& r : s.rows)
          rows.append(py::make_tuple(r.excised_length, r.capacity, r.difference));
        return py::make_tuple(rows, s.fitted_exponent, s.point_difference);
      },
      py::arg("domain"), py::arg("z"), py::arg("w"), py::arg("steps") = 6);
  m.def(
      "run_suite",
      [](const std::string& corpus, const std::string& config_json) {
        SuiteConfig cfg;
        if (!config_json.empty()) {
          auto j = nlohmann::json::parse(config_json);
          if (j.contains("resolution")) cfg.resolution = j["resolution"].get<double>();
          if (j.contains("eigen_resolution"))
            cfg.eigen_resolution = j["eigen_resolution"].get<double>();
          if (j.contains("degree")) cfg.degree = j["degree"].get<int>();
        }
        std::vector<Domain> domains;
        if (corpus == "default") domains = default_corpus();
        else
          for (const auto& jd : nlohmann::json::parse(corpus)) domains.push_back(Domain::from_json(jd));
        py::list out;
        for (const auto& r : run_suite(domains, cfg)) {
          py::dict d;
          d["inequality"] = r.inequality;
          d["domain"] = r.domain;
          d["parameters"] = r.parameters;
          d["lhs"] = r.lhs;
          d["rhs"] = r.rhs;
          d["margin"] = r.margin;
          d["pass"] = r.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("corpus") = "default", py::arg("config_json") = "");
}

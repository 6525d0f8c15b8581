#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "planarpot/verify.hpp"

using namespace planarpot;

namespace {

std::filesystem::path tmp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

SuiteConfig fast_config() {
  SuiteConfig cfg;
  cfg.resolution = 32;
  cfg.eigen_resolution = 40;
  cfg.degree = 12;
  cfg.alphas = {0.3};
  cfg.p_ladder = {1.5, 1.9};
  cfg.capacity_samples = 128;
  return cfg;
}

} // namespace

TEST_CASE("default corpus has five labeled domains") {
  auto corpus = default_corpus();
  REQUIRE(corpus.size() == 5);
  std::vector<std::string> labels;
  for (const auto& d : corpus) labels.push_back(d.label());
  CHECK(labels == std::vector<std::string>{"disk", "square", "annulus", "slit_disk", "rectangle"});
}

TEST_CASE("suite rows are well formed, sorted and all pass on a smooth corpus") {
  std::vector<Domain> corpus{Domain::disk(0, 1).labeled("disk")};
  auto rows = run_suite(corpus, fast_config());
  REQUIRE(rows.size() > 10);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    CHECK(!r.inequality.empty());
    CHECK(r.margin == doctest::Approx(r.lhs - r.rhs));
    CHECK(r.pass);
    if (i > 0)
      CHECK(std::tie(rows[i - 1].inequality, rows[i - 1].domain, rows[i - 1].parameters) <=
            std::tie(r.inequality, r.domain, r.parameters));
  }
}

TEST_CASE("suite is deterministic row for row") {
  std::vector<Domain> corpus{Domain::rectangle(0, 1, 0, 1).labeled("square")};
  auto cfg = fast_config();
  auto a = run_suite(corpus, cfg);
  auto b = run_suite(corpus, cfg);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lhs == b[i].lhs);
    CHECK(a[i].rhs == b[i].rhs);
    CHECK(a[i].parameters == b[i].parameters);
  }
}

TEST_CASE("report CSV and JSON round trip") {
  std::vector<ReportRow> rows(2);
  rows[0] = {"blocki", "disk", "z=0.1+0.2i", 1.5, 1.25, 0.25, 0.02, true, "32"};
  rows[1] = {"lp_shape", "square", "p=1.5", 0.3, 0.0, 0.3, 0.0, true, "32"};
  auto csv = tmp_path("planarpot_report.csv");
  auto json = tmp_path("planarpot_report.json");
  emit_report_csv(rows, csv.string());
  emit_report_json(rows, json.string());

  std::string text = slurp(csv);
  CHECK(text.rfind("inequality,domain,parameters,lhs,rhs,margin,tolerance,pass,resolutions\n", 0) ==
        0);
  CHECK(text.find("blocki,disk,z=0.1+0.2i,1.500000e+00,1.250000e+00") != std::string::npos);

  auto back = parse_report_json(json.string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].inequality == "blocki");
  CHECK(back[0].lhs == doctest::Approx(1.5));
  CHECK(back[1].pass);
  std::filesystem::remove(csv);
  std::filesystem::remove(json);
}

TEST_CASE("svg heatmap is valid and deterministic") {
  auto grid = rasterize(Domain::disk(0, 1), 16);
  auto f = make_scalar_field(grid, [](cxd z) { return std::norm(z); });
  auto p1 = tmp_path("planarpot_a.svg");
  auto p2 = tmp_path("planarpot_b.svg");
  svg_heatmap(f, p1.string());
  svg_heatmap(f, p2.string());
  std::string s1 = slurp(p1);
  CHECK(s1.rfind("<svg", 0) == 0);
  CHECK(s1.find("</svg>") != std::string::npos);
  CHECK(s1.find("<rect") != std::string::npos);
  CHECK(s1 == slurp(p2));
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("excision sweep: capacities shrink, point excision is invisible") {
  SuiteConfig cfg = fast_config();
  auto sweep = excision_sweep(Domain::disk(0, 1), cxd(0.3, 0.2), cxd(-0.3, 0.2), 3, cfg);
  REQUIRE(sweep.rows.size() == 3);
  for (size_t i = 1; i < sweep.rows.size(); ++i) {
    CHECK(sweep.rows[i].capacity < sweep.rows[i - 1].capacity);
    CHECK(sweep.rows[i].excised_length == doctest::Approx(sweep.rows[i - 1].excised_length / 4));
  }
  CHECK(sweep.rows[0].capacity == doctest::Approx(0.25).epsilon(0.02));
  CHECK(sweep.point_difference < 1e-6);
  CHECK(sweep.r0 > 0);
}

TEST_CASE("c0 estimate is positive and bounded by the disk ratio") {
  SuiteConfig cfg = fast_config();
  std::vector<Domain> corpus{Domain::disk(0, 1).labeled("disk")};
  double c0 = c0_estimate(corpus, cfg);
  CHECK(c0 > 0.0);
  CHECK(c0 < 0.1);
}

TEST_CASE("run_suite rejects an empty corpus") {
  CHECK_THROWS(run_suite({}, fast_config()));
}

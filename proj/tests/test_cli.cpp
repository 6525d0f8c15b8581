#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
};

// run the CLI with stdout captured and stderr discarded
RunResult run_cli(const std::string& args) {
  const fs::path out_path = fs::temp_directory_path() / "planarpot_cli_out.txt";
  const std::string cmd =
      std::string(PLANARPOT_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(out_path);
  std::ostringstream os;
  os << is.rdbuf();
  r.out = os.str();
  fs::remove(out_path);
  return r;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream os(p, std::ios::binary);
  os << text;
  return p;
}

fs::path disk_json() {
  return write_file("planarpot_disk.json",
                    R"({"type":"disk","center":[0.0,0.0],"radius":1.0,"label":"disk"})");
}

int count_lines(const fs::path& p) {
  std::ifstream is(p);
  int n = 0;
  std::string line;
  while (std::getline(is, line)) ++n;
  return n;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("kernel").code == 2);                       // missing --domain
  CHECK(run_cli("kernel --domain x.json --bogus 1").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("kernel --help").code == 0);
}

TEST_CASE("computational failures exit with code 1") {
  auto bad = write_file("planarpot_bad.json", R"({"type":"hexagon"})");
  CHECK(run_cli("kernel --domain " + bad.string() + " --eval 0,0").code == 1);
  CHECK(run_cli("kernel --domain /nonexistent.json --eval 0,0").code == 1);
  fs::remove(bad);
}

TEST_CASE("kernel subcommand evaluates the disk diagonal") {
  auto dj = disk_json();
  auto r = run_cli("kernel --domain " + dj.string() + " --degree 24 --resolution 64 --eval 0,0");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(1 / 3.14159265).epsilon(5e-3));

  auto rm = run_cli("kernel --domain " + dj.string() + " --degree 24 --resolution 64 --min");
  CHECK(rm.code == 0);
  CHECK(rm.out.find(" at ") != std::string::npos);
  fs::remove(dj);
}

TEST_CASE("capacity subcommand matches the segment oracle") {
  auto seg = write_file("planarpot_seg.json",
                        R"({"type":"segment","a":[-2.0,0.0],"b":[2.0,0.0]})");
  auto r = run_cli("capacity --set " + seg.string() + " --samples 256");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(1.0).epsilon(0.02));
  fs::remove(seg);
}

TEST_CASE("robin, radius, eigen and hardy subcommands run on the disk") {
  auto dj = disk_json();
  auto robin = run_cli("robin --domain " + dj.string() + " --point 0.5,0");
  CHECK(robin.code == 0);
  CHECK(std::stod(robin.out) == doctest::Approx(4.0 / 3).epsilon(0.015));

  auto radius = run_cli("radius --domain " + dj.string() + " --alpha 0.3");
  CHECK(radius.code == 0);
  CHECK(std::stod(radius.out) >= 1.0);

  auto eigen = run_cli("eigen --domain " + dj.string() + " --resolution 48");
  CHECK(eigen.code == 0);
  CHECK(std::stod(eigen.out) == doctest::Approx(5.7832).epsilon(0.02));

  auto hardy = run_cli("hardy --domain " + dj.string() + " --resolution 48");
  CHECK(hardy.code == 0);
  CHECK(std::stod(hardy.out) == doctest::Approx(0.5).epsilon(0.1));
  fs::remove(dj);
}

TEST_CASE("dbar subcommand emits the estimate table") {
  auto dj = disk_json();
  auto r = run_cli("dbar --domain " + dj.string() +
                   " --resolution 48 --degree 12 --bump 0.1,0.2,0.3 --p 1.5");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("check,alpha_or_p,lhs,rhs_or_v_l1,ratio_or_implied_c0\n", 0) == 0);
  CHECK(r.out.find("weighted,") != std::string::npos);
  CHECK(r.out.find("lp,1.5") != std::string::npos);
  fs::remove(dj);
}

TEST_CASE("sweep subcommand writes the excision table") {
  auto dj = disk_json();
  fs::path out = fs::temp_directory_path() / "planarpot_sweep.csv";
  auto cfgless = run_cli("sweep --domain " + dj.string() +
                         " --z 0.3,0.2 --w -0.3,0.2 --steps 2 --out " + out.string());
  CHECK(cfgless.code == 0);
  std::ifstream is(out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "excised_length,capacity,difference");
  std::string body((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(body.find("# fitted_exponent=") != std::string::npos);
  CHECK(body.find("point_difference=") != std::string::npos);
  fs::remove(out);
  fs::remove(dj);
}

TEST_CASE("verify subcommand produces a full default-corpus report") {
  fs::path csv = fs::temp_directory_path() / "planarpot_verify.csv";
  fs::path json = fs::temp_directory_path() / "planarpot_verify.json";
  auto cfg = write_file("planarpot_cfg.json",
                        R"({"resolution":32,"eigen_resolution":40,"degree":12,)"
                        R"("alphas":[0.3],"p_ladder":[1.5,1.9],"capacity_samples":128})");
  auto r = run_cli("verify --corpus default --out " + csv.string() + " --json " + json.string() +
                   " --config " + cfg.string());
  CHECK(r.code == 0);
  CHECK(count_lines(csv) >= 41); // header + at least 40 rows
  std::ifstream is(json);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"inequality\"") != std::string::npos);

  // strict config: unknown keys are rejected
  auto bad_cfg = write_file("planarpot_badcfg.json", R"({"resolutoin":32})");
  CHECK(run_cli("verify --corpus default --out " + csv.string() + " --config " +
                bad_cfg.string()).code == 1);
  fs::remove(csv);
  fs::remove(json);
  fs::remove(cfg);
  fs::remove(bad_cfg);
}

#include <doctest.h>

#include "mskrock_cli/commands.hpp"

#include "mskrock/convergence.hpp"
#include "mskrock/csv.hpp"
#include "mskrock/stochastic.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mskrock;
using namespace mskrock::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mskrock_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

RunOptions options(const fs::path& dir, std::uint64_t seed = 7) {
  RunOptions o;
  o.out_dir = dir;
  o.seed = seed;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "mskrock");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text) *err_text = err.str();
  return code;
}

} // namespace

TEST_CASE("config parsing") {
  auto cfg = RunConfig::from_string("version = 1\n[run]\ntaus = 2^-1, 0.25 ,2^-3\nseed = 18446744073709551615\n");
  CHECK(cfg.num_list("run.taus") == std::vector<double>{0.5, 0.25, 0.125});
  CHECK(cfg.u64("run.seed") == 18446744073709551615ull);
  cfg.set("method.eps", "0.1");
  CHECK(cfg.num("method.eps") == 0.1);
  CHECK_NOTHROW(cfg.validate());
  cfg.set("method.bogus", "1");
  CHECK_THROWS_AS(cfg.validate(), InputError);
  CHECK_THROWS_AS(RunConfig::from_string("[run]\nseed = 1\n").validate(), InputError);
  CHECK_THROWS_AS(RunConfig::from_string("version = 2\n").validate(), InputError);
  CHECK_THROWS_AS(RunConfig::from_string("version = 1\n[run]\ntau = abc\n").num("run.tau"), InputError);
}

TEST_CASE("integrate: one step matches the library step") {
  const auto dir = scratch_dir("one_step");
  auto cfg = RunConfig::from_string(
      "version = 1\n[problem]\nid = multirate-test\nlambda = -50\nzeta = -1\nmu = 0.5\nx0 = 1.5\n"
      "[method]\nname = mskrock\ns = 5\nm = 4\n[run]\ntau = 1\n");
  const auto res = cmd_integrate(cfg, options(dir, 11));
  REQUIRE(res.ok());
  const auto snap = read_csv((dir / "snapshot.csv").string());
  REQUIRE(snap.rows.size() == 2);
  const double got = snap.number(1, "value");

  const auto p = make_multirate_test(-50, -1, 0.5, 1.5);
  const BrownianGrid grid(11, 1, 1, 1.0);
  const auto path = grid.path(0);
  const auto sp = build_stage_params(5, 4, 1.0, kDefaultDamping);
  const Vector x0 = {1.5};
  const auto want = mskrock_step(p.drift, p.diffusion, sp, x0, 0.0, path.fine(0));
  CHECK(got == want[0]);

  const auto steps = read_csv((dir / "steps.csv").string());
  CHECK(steps.number(0, "s") == 5);
  CHECK(steps.number(0, "m") == 4);
  CHECK(steps.number(0, "n_fF") == 24);
  const auto text = slurp(dir / "steps.csv");
  CHECK(text.find('\r') == std::string::npos);
  const auto meta = read_metadata((dir / "metadata.txt").string());
  CHECK(meta.at("seed") == "11");
  CHECK(meta.at("command") == "integrate");
}

TEST_CASE("integrate: a noiseless sourceless heat run stays at its initial value") {
  const auto dir = scratch_dir("heat_const");
  auto cfg = RunConfig::from_string(
      "version = 1\n[problem]\nid = refined-heat\ndelta = 0.125\nsigma = 0\nsource_amplitude = 0\n"
      "initial_value = 0.75\n[run]\ntau = 0.01\n");
  REQUIRE(cmd_integrate(cfg, options(dir)).ok());
  const auto snap = read_csv((dir / "snapshot.csv").string());
  const double last_step = snap.number(snap.rows.size() - 1, "step");
  CHECK(last_step == 10);
  for (std::size_t i = 0; i < snap.rows.size(); ++i)
    CHECK(std::abs(snap.number(i, "value") - 0.75) <= 1e-10);
  const auto steps = read_csv((dir / "steps.csv").string());
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i < steps.rows.size(); ++i) {
    lo = std::min(lo, steps.number(i, "rho_S"));
    hi = std::max(hi, steps.number(i, "rho_S"));
  }
  CHECK(hi <= 1.05 * lo);
}

TEST_CASE("input errors") {
  const auto dir = scratch_dir("errors");
  auto cfg = RunConfig::from_string("version = 1\n[problem]\nid = sinh\n[run]\ntau = 0.25\n");
  RunOptions no_seed;
  no_seed.out_dir = dir;
  CHECK_THROWS_AS(cmd_integrate(cfg, no_seed), InputError);
  cfg.set("problem.id", "nope");
  CHECK_THROWS_AS(cmd_integrate(cfg, options(dir)), InputError);
  cfg.set("problem.id", "sinh");
  cfg.set("run.tau", "0.3");
  CHECK_THROWS_AS(cmd_integrate(cfg, options(dir)), InputError);
  cfg.set("run.tau", "0.25");
  cfg.set("method.m", "4");
  CHECK_THROWS_AS(cmd_integrate(cfg, options(dir)), InputError);
}

TEST_CASE("converge: self reference and sidecar") {
  const auto dir = scratch_dir("converge");
  auto cfg = RunConfig::from_string(
      "version = 1\n[problem]\nid = sinh\n[run]\ntaus = 2^-2, 2^-3, 2^-4\npaths = 16\n"
      "reference = same-tau\nreference_method = mskrock\n");
  REQUIRE(cmd_converge(cfg, options(dir)).ok());
  const auto t = read_error_table((dir / "errors.csv").string());
  REQUIRE(t.rows.size() == 3);
  for (const auto& r : t.rows) CHECK(r.strong_error == 0.0);
  const auto meta = read_metadata((dir / "metadata.txt").string());
  CHECK(meta.at("reference") == "same-tau");
  CHECK(meta.count("seed") == 1);
}

TEST_CASE("converge: failed slope checks are reported") {
  const auto dir = scratch_dir("converge_fail");
  auto cfg = RunConfig::from_string(
      "version = 1\n[problem]\nid = sinh\n[run]\ntaus = 2^-2, 2^-3, 2^-4\npaths = 50\n"
      "[checks]\nstrong_slope_min = 5\n");
  const auto res = cmd_converge(cfg, options(dir));
  CHECK_FALSE(res.ok());
}

TEST_CASE("stability-scan") {
  const auto dir = scratch_dir("scan");
  auto cfg = RunConfig::from_string("version = 1\n[scan]\ns = 4\nm = 4\npoints = 11\nper_axis = 4\n");
  REQUIRE(cmd_stability_scan(cfg, options(dir)).ok());
  const auto poly = read_csv((dir / "polynomials.csv").string());
  CHECK(poly.rows.size() == 11);
  const std::size_t last = poly.rows.size() - 1;
  CHECK(poly.number(last, "z_inner") == 0.0);
  CHECK(poly.number(last, "Phi_m") == doctest::Approx(1.0));
  CHECK(poly.number(last, "A_s") == doctest::Approx(1.0));
  for (std::size_t i = 0; i < poly.rows.size(); ++i) CHECK(poly.number(i, "psi_sq_le_phi") == 1);
  const auto region = read_csv((dir / "region.csv").string());
  CHECK(region.rows.size() == 64);
  for (std::size_t i = 0; i < region.rows.size(); ++i) CHECK(region.number(i, "stable") == 1);
}

TEST_CASE("speedup: reaction sweep") {
  const auto dir = scratch_dir("speedup_r");
  const std::string net = std::string(MSKROCK_TEST_DATA_DIR) + "/dimerization.net";
  auto cfg = RunConfig::from_string("version = 1\n[problem]\nid = reaction-network\nfile = " + net +
                                    "\nhorizon = 0.01\n[run]\ntau = 0.01\n[speedup]\nsweep = r\n");
  const auto res = cmd_speedup(cfg, options(dir));
  for (const auto& f : res.failures) MESSAGE(f);
  CHECK(res.ok());
  const auto cost = read_csv((dir / "cost.csv").string());
  REQUIRE(cost.rows.size() == 5);
  CHECK(cost.number(0, "value") == 0);
  CHECK(cost.number(0, "cost_mskrock") == doctest::Approx(cost.number(0, "cost_skrock")));
  for (std::size_t i = 0; i < cost.rows.size(); ++i)
    CHECK(cost.number(i, "cost_mskrock") == doctest::Approx(cost.number(i, "predicted_cost_mskrock")).epsilon(1e-10));
}

TEST_CASE("command line") {
  std::string err;
  CHECK(run({"--help"}) == 0);
  CHECK(run({}) == 2);
  CHECK(run({"integrate", "--bogus"}) == 2);
  const auto dir = scratch_dir("cli");
  CHECK(run({"integrate", "--set", "problem.id=sinh", "--set", "run.tau=0.25", "--out", dir.string()}, &err) == 2);
  CHECK(err.find("seed") != std::string::npos);
  CHECK(run({"integrate", "--set", "problem.id=sinh", "--set", "run.tau=0.25", "--seed", "3",
             "--threads", "2", "--out", dir.string()}) == 0);
  CHECK(fs::exists(dir / "snapshot.csv"));
  CHECK(run({"converge", "--set", "problem.id=sinh", "--set", "run.taus=0.5,0.25,0.125", "--set",
             "run.paths=10", "--set", "checks.strong_slope_min=10", "--seed", "1", "--out",
             (dir / "c").string()}) == 1);
  CHECK(fs::exists(dir / "c" / "failures.txt"));
  CHECK(run({"integrate", "--config", "/nonexistent.ini", "--seed", "1"}) == 2);
}

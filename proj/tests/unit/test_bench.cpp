#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "octosimd/bench/csv.hpp"
#include "octosimd/bench/scenario.hpp"
#include "octosimd/bench/sweep.hpp"
#include "support/fixtures.hpp"

using namespace octosimd;
using namespace octosimd::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("octosimd_" + name);
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> names(const RunResult& r) {
  std::set<std::string> s;
  for (const auto& rec : r.report) s.insert(rec.name);
  return s;
}

}  // namespace

TEST_CASE("scenario configuration") {
  const auto blast = ScenarioConfig::named("blast");
  CHECK(blast.gravity_per_step == 0);
  CHECK(blast.hydro_per_step == 3);
  const auto star = ScenarioConfig::named("rotating-star-proxy");
  CHECK(star.gravity_per_step == 6);
  CHECK(star.max_level == 3);
  CHECK(star.stop_step == 10);
  CHECK(star.theta == 0.34);
  CHECK_THROWS_AS(ScenarioConfig::named("sedov"), std::invalid_argument);

  auto bad = blast;
  bad.stop_step = 0;
  CHECK_THROWS_AS(run_scenario(bad, RunOptions{}), std::invalid_argument);
  bad = blast;
  bad.gravity_per_step = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  RunOptions opts;
  opts.backend = "avx9000";
  CHECK_THROWS_AS(run_scenario(blast, opts), std::invalid_argument);
}

TEST_CASE("blast initial condition") {
  for (int level : {0, 1, 3}) {
    auto cfg = ScenarioConfig::named("blast");
    cfg.max_level = level;
    const grid::Octree tree = init_scenario(cfg);
    CHECK(tree.leaf_count() == (std::size_t{1} << (3 * level)));
    const double dx3 = tree.dx() * tree.dx() * tree.dx();
    const double cells = 512.0 * static_cast<double>(tree.leaf_count());
    const double want = 1e-3 * (cells - 8) * dx3 + 10.0 * 8 * dx3;
    CHECK(conserved_totals(tree).energy == doctest::Approx(want).epsilon(1e-13));
    CHECK(conserved_totals(tree).mass == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("rotating star proxy peaks at the centre") {
  auto cfg = ScenarioConfig::named("rotating-star-proxy");
  cfg.max_level = 1;
  const grid::Octree tree = init_scenario(cfg);
  double best = 0.0;
  grid::LeafCoord best_leaf{};
  int bi = 0, bj = 0, bk = 0;
  for (auto id : tree.leaf_order())
    for (int k = 0; k < 8; ++k)
      for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 8; ++i) {
          const double r = tree.leaf(id).hydro(grid::HydroVar::rho)[grid::SubGrid::ext_index(i, j, k)];
          if (r > best) {
            best = r;
            best_leaf = tree.leaf(id).coord();
            bi = i, bj = j, bk = k;
          }
        }
  const int gi = best_leaf.x * 8 + bi, gj = best_leaf.y * 8 + bj, gk = best_leaf.z * 8 + bk;
  CHECK((gi == 7 || gi == 8));
  CHECK((gj == 7 || gj == 8));
  CHECK((gk == 7 || gk == 8));
  CHECK(best < 10.0);
  CHECK(best > 9.0);
  const grid::SubGrid& s = tree.leaf(0);
  CHECK(s.mass()[grid::SubGrid::ext_index(0, 0, 0)] ==
        s.hydro(grid::HydroVar::rho)[grid::SubGrid::ext_index(0, 0, 0)] * tree.dx() * tree.dx() * tree.dx());
}

TEST_CASE("rotating star proxy records and counts") {
  auto cfg = ScenarioConfig::named("rotating-star-proxy");
  cfg.max_level = 0;
  cfg.stop_step = 2;
  RunOptions opts;
  opts.backend = "emulated4";
  const RunResult r = run_scenario(cfg, opts);
  CHECK(names(r) == std::set<std::string>{"flux", "monopole", "multipole", "reconstruct", "total"});
  for (const auto& rec : r.report) {
    if (rec.name == "multipole" || rec.name == "monopole") CHECK(rec.count == 2 * 6);
    if (rec.name == "flux" || rec.name == "reconstruct") CHECK(rec.count == 2 * 3);
    if (rec.name == "total") CHECK(rec.count == 1);
  }
  CHECK(r.kernel_launches == 2 * (6 * 2 + 3 * 2));
  CHECK(r.launch_stats.inlined == r.kernel_launches);
  CHECK(r.launch_stats.spawned == 0);
  CHECK(r.computation_s > 0.0);
  CHECK(std::fabs(r.final.mass - r.initial.mass) <= 1e-12 * r.initial.mass);
}

TEST_CASE("blast is backend independent and conservative") {
  auto cfg = ScenarioConfig::named("blast");
  cfg.max_level = 1;
  cfg.stop_step = 4;
  RunOptions scalar;
  const RunResult a = run_scenario(cfg, scalar);
  CHECK(names(a) == std::set<std::string>{"flux", "reconstruct", "total"});
  for (const auto& b : simd::available_backends()) {
    RunOptions o;
    o.backend = b.name;
    o.threads = 2;
    CHECK(fixtures::same_fields(run_scenario(cfg, o).tree, a.tree));
  }
  RunOptions legacy;
  legacy.hydro_kernel = HydroKernel::legacy;
  CHECK(fixtures::same_fields(run_scenario(cfg, legacy).tree, a.tree));
  CHECK(std::fabs(a.final.energy - a.initial.energy) <= 1e-12 * a.initial.energy);
}

TEST_CASE("csv rows") {
  BenchRecord r{"blast", "emulated4", 4, 2, 16, "flux", 30, 1234.5, 37035, 0.125};
  const std::string line = format_row(r);
  CHECK(line == "blast,emulated4,4,2,16,flux,30,1234.5,37035,0.125");
  CHECK(parse_row(line) == r);
  CHECK_THROWS(parse_row("a,b,c"));
  CHECK_THROWS(parse_row("blast,emulated4,four,2,16,flux,30,1234.5,37035,0.125"));

  const double awkward = 0.1 + 0.2;
  r.computation_s = awkward;
  CHECK(parse_row(format_row(r)).computation_s == awkward);
}

TEST_CASE("csv file gets one header") {
  const fs::path p = scratch("header.csv");
  BenchRecord r{"blast", "scalar", 1, 1, 1, "total", 1, 5.0, 5, 5e-9};
  append_csv(p, {r});
  append_csv(p, {r, r});
  const std::string text = slurp(p);
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(read_csv(p).size() == 3);
  fs::remove(p);

  CHECK_THROWS_AS(append_csv("/nonexistent-dir/x.csv", {r}), std::runtime_error);
}

TEST_CASE("backend labels") {
  RunOptions o;
  o.backend = "emulated8";
  CHECK(backend_label(o) == "emulated8");
  CHECK(backend_width(o) == 8);
  o.hydro_kernel = HydroKernel::scalar;
  o.gravity_kernel = GravityKernel::scalar;
  CHECK(backend_label(o) == "scalar");
  CHECK(backend_width(o) == 1);
  o.hydro_kernel = HydroKernel::legacy;
  CHECK(backend_label(o) == "legacy");
  CHECK_THROWS_AS(parse_hydro_kernel("fortran"), std::invalid_argument);
}

TEST_CASE("sweep parsing") {
  const SweepSpec a = parse_sweep("1,2,4\xC3\x97scalar,emulated4");
  CHECK(a.threads == std::vector<std::size_t>{1, 2, 4});
  CHECK(a.backends == std::vector<std::string>{"scalar", "emulated4"});
  const SweepSpec b = parse_sweep("3xemulated16");
  CHECK(b.threads == std::vector<std::size_t>{3});
  CHECK_THROWS_AS(parse_sweep("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep("1,,2xscalar"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep("0xscalar"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep("1xneon"), std::invalid_argument);
}

TEST_CASE("sweep appends one block per configuration") {
  const fs::path p = scratch("sweep.csv");
  auto cfg = ScenarioConfig::named("blast");
  cfg.max_level = 0;
  cfg.stop_step = 1;
  const auto rows = sweep(cfg, parse_sweep("1,2xscalar,emulated2"), p);
  CHECK(rows.size() == 2 * 2 * 3);
  const auto back = read_csv(p);
  CHECK(back.size() == rows.size());
  CHECK(back[3].threads == 1);
  CHECK(back[3].backend == "emulated2");
  CHECK(back[3].simd_width == 2);
  CHECK(back.back().threads == 2);
  fs::remove(p);
  CHECK_THROWS_AS(sweep(cfg, SweepSpec{}, p), std::invalid_argument);
  CHECK_THROWS_AS(sweep(cfg, parse_sweep("1xscalar"), "/nonexistent-dir/s.csv"), std::runtime_error);
}

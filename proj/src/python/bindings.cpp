#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "octosimd/bench/csv.hpp"
#include "octosimd/bench/scenario.hpp"
#include "octosimd/bench/sweep.hpp"
#include "octosimd/grid/octree.hpp"
#include "octosimd/simd/backend.hpp"
#include "octosimd/simd/dynamic.hpp"

namespace py = pybind11;
using namespace octosimd;

namespace {

py::dict record_dict(const bench::BenchRecord& r) {
  py::dict d;
  d["scenario"] = r.scenario;
  d["backend"] = r.backend;
  d["simd_width"] = r.simd_width;
  d["threads"] = r.threads;
  d["tasks_per_multipole"] = r.tasks_per_multipole;
  d["kernel"] = r.kernel;
  d["count"] = r.count;
  d["mean_ns"] = r.mean_ns;
  d["total_ns"] = r.total_ns;
  d["computation_s"] = r.computation_s;
  return d;
}

py::list record_list(const std::vector<bench::BenchRecord>& rows) {
  py::list out;
  for (const auto& r : rows) out.append(record_dict(r));
  return out;
}

py::dict totals_dict(const bench::ConservedTotals& t) {
  py::dict d;
  d["mass"] = t.mass;
  d["momentum"] = py::make_tuple(t.momentum_x, t.momentum_y, t.momentum_z);
  d["energy"] = t.energy;
  return d;
}

bench::ScenarioConfig scenario_config(const std::string& name, int max_level, int stop_step, double theta) {
  auto cfg = bench::ScenarioConfig::named(name);
  cfg.max_level = max_level;
  cfg.stop_step = stop_step;
  cfg.theta = theta;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<kernels::KernelError>(m, "KernelError", PyExc_RuntimeError);

  m.attr("csv_header") = std::string(bench::kCsvHeader);

  m.def("backends", [] {
    std::vector<std::string> names;
    for (const auto& b : simd::available_backends()) names.push_back(b.name);
    return names;
  });
  m.def("lane_count", [](const std::string& name) { return simd::lane_count(name); }, py::arg("backend"));

  m.def(
      "unary",
      [](const std::string& op, const std::string& backend, const std::vector<double>& a) {
        return simd::apply_array(simd::parse_unary_op(op), simd::find_backend(backend), a);
      },
      py::arg("op"), py::arg("backend"), py::arg("a"));
  m.def(
      "binary",
      [](const std::string& op, const std::string& backend, const std::vector<double>& a,
         const std::vector<double>& b) {
        return simd::apply_array(simd::parse_binary_op(op), simd::find_backend(backend), a, b);
      },
      py::arg("op"), py::arg("backend"), py::arg("a"), py::arg("b"));
  m.def(
      "fma",
      [](const std::string& backend, const std::vector<double>& a, const std::vector<double>& b,
         const std::vector<double>& c) { return simd::fma_array(simd::find_backend(backend), a, b, c); },
      py::arg("backend"), py::arg("a"), py::arg("b"), py::arg("c"));
  m.def(
      "compare",
      [](const std::string& op, const std::string& backend, const std::vector<double>& a,
         const std::vector<double>& b) {
        return simd::compare_array(simd::parse_compare_op(op), simd::find_backend(backend), a, b);
      },
      py::arg("op"), py::arg("backend"), py::arg("a"), py::arg("b"));
  m.def(
      "choose",
      [](const std::string& backend, const std::vector<bool>& mask, const std::vector<double>& a,
         const std::vector<double>& b) { return simd::choose_array(simd::find_backend(backend), mask, a, b); },
      py::arg("backend"), py::arg("mask"), py::arg("a"), py::arg("b"));
  m.def(
      "reduce",
      [](const std::string& op, const std::string& backend, const std::vector<double>& lanes) {
        const simd::DynVec v(simd::find_backend(backend), lanes);
        if (op == "sum") return simd::reduce_sum(v);
        if (op == "min") return simd::reduce_min(v);
        if (op == "max") return simd::reduce_max(v);
        throw std::invalid_argument("unknown reduction '" + op + "' (valid: sum, min, max)");
      },
      py::arg("op"), py::arg("backend"), py::arg("lanes"));

  m.def(
      "grid_info",
      [](int max_level) {
        const grid::Octree tree(max_level);
        py::dict d;
        d["max_level"] = tree.max_level();
        d["leaves"] = tree.leaf_count();
        d["leaves_per_axis"] = tree.leaves_per_axis();
        d["cells_per_axis"] = tree.cells_per_axis();
        d["dx"] = tree.dx();
        return d;
      },
      py::arg("max_level"));

  m.def(
      "run_scenario",
      [](const std::string& scenario, int max_level, int stop_step, double theta, const std::string& backend,
         std::size_t threads, std::size_t tasks_per_multipole, const std::string& hydro_kernel,
         const std::string& gravity_kernel) {
        const auto cfg = scenario_config(scenario, max_level, stop_step, theta);
        bench::RunOptions opts;
        opts.backend = backend;
        opts.threads = threads;
        opts.tasks_per_multipole = tasks_per_multipole;
        opts.hydro_kernel = bench::parse_hydro_kernel(hydro_kernel);
        opts.gravity_kernel = bench::parse_gravity_kernel(gravity_kernel);
        std::optional<bench::RunResult> run;
        {
          py::gil_scoped_release release;
          run.emplace(bench::run_scenario(cfg, opts));
        }
        const bench::RunResult& r = *run;
        py::dict d;
        d["records"] = record_list(bench::make_records(cfg, opts, r));
        d["computation_s"] = r.computation_s;
        d["kernel_launches"] = r.kernel_launches;
        d["spawned"] = r.launch_stats.spawned;
        d["inlined"] = r.launch_stats.inlined;
        d["initial"] = totals_dict(r.initial);
        d["final"] = totals_dict(r.final);
        return d;
      },
      py::arg("scenario") = "rotating-star-proxy", py::arg("max_level") = 3, py::arg("stop_step") = 10,
      py::arg("theta") = 0.34, py::arg("backend") = "scalar", py::arg("threads") = 1,
      py::arg("tasks_per_multipole") = 1, py::arg("hydro_kernel") = "simd", py::arg("gravity_kernel") = "simd");

  m.def(
      "sweep",
      [](const std::string& spec, const std::filesystem::path& csv, const std::string& scenario, int max_level,
         int stop_step, double theta, std::size_t tasks_per_multipole) {
        const auto cfg = scenario_config(scenario, max_level, stop_step, theta);
        const auto parsed = bench::parse_sweep(spec);
        bench::RunOptions base;
        base.tasks_per_multipole = tasks_per_multipole;
        std::vector<bench::BenchRecord> rows;
        {
          py::gil_scoped_release release;
          rows = bench::sweep(cfg, parsed, csv, base);
        }
        return record_list(rows);
      },
      py::arg("spec"), py::arg("csv"), py::arg("scenario") = "rotating-star-proxy", py::arg("max_level") = 3,
      py::arg("stop_step") = 10, py::arg("theta") = 0.34, py::arg("tasks_per_multipole") = 1);

  m.def(
      "read_csv", [](const std::filesystem::path& csv) { return record_list(bench::read_csv(csv)); },
      py::arg("csv"));
}

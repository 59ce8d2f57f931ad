#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bochnerlab/casededuce.hpp"
#include "bochnerlab/cli.hpp"
#include "bochnerlab/manifold.hpp"
#include "bochnerlab/proofcheck.hpp"

namespace py = pybind11;
using namespace bochnerlab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "curvature laboratory core bindings";
  m.attr("__version__") = MODULE_VERSION;

  m.def("zoo_names", &manifold::zoo_names, "names of the built-in charts");

  m.def(
      "run_json",
      [](const std::string& mode, const std::string& zoo, const std::string& config,
         int n, const std::vector<double>& point, double tol, int seeds,
         std::uint64_t seed, double radius, int grid) {
        cli::RunConfig cfg;
        cfg.mode = mode;
        cfg.zoo = zoo;
        cfg.config_path = config;
        cfg.n = n;
        cfg.point = point;
        cfg.tol = tol;
        cfg.seeds = seeds;
        cfg.seed = seed;
        cfg.radius = radius;
        cfg.grid = grid;
        return cli::run(cfg);
      },
      py::arg("mode"), py::arg("zoo") = "", py::arg("config") = "",
      py::arg("n") = 3, py::arg("point") = std::vector<double>{},
      py::arg("tol") = 1e-8, py::arg("seeds") = 100, py::arg("seed") = 1,
      py::arg("radius") = 0.5, py::arg("grid") = 3,
      "run one batch mode and return the JSON report text");

  m.def(
      "case_deduction",
      [](const std::array<bool, 4>& family_nonzero, int n) {
        auto d = deduce::case_deduction(family_nonzero, n);
        py::dict out;
        out["verdict"] = d.verdict;
        out["all_mu_zero"] = d.all_mu_zero;
        out["mirrored"] = d.mirrored;
        out["trace"] = d.trace;
        return out;
      },
      py::arg("family_nonzero"), py::arg("n"),
      "exact rational replay of the eigenvalue case analysis");

  m.def(
      "oracle",
      [](int seeds, int n, std::uint64_t seed) {
        auto rep = proof::run_synthetic_oracle(seeds, n, seed);
        py::dict out;
        out["n"] = rep.n;
        out["seeds"] = rep.seeds;
        out["worst_rel"] = rep.worst_rel;
        out["passed"] = rep.passed;
        py::list steps;
        for (const auto& sc : rep.steps) {
          py::dict s;
          s["step"] = sc.step;
          s["constant"] = py::make_tuple(sc.constant.real(), sc.constant.imag());
          s["worst_rel"] = sc.worst_rel;
          s["draws"] = sc.draws;
          s["uninformative"] = sc.uninformative;
          steps.append(s);
        }
        out["steps"] = steps;
        return out;
      },
      py::arg("seeds") = 100, py::arg("n") = 3, py::arg("seed") = 1,
      "synthetic verification of the reduction steps");
}

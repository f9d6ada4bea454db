#include "cli.hpp"
#include "sbseries/composition.hpp"
#include "sbseries/order_conditions.hpp"
#include "sbseries/problems.hpp"
#include "sbseries/sde_lab.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace sbs;

namespace {

Calculus calculus_from(const std::string& name) {
  if (name == "ito") return Calculus::ito;
  if (name == "strat" || name == "stratonovich") return Calculus::stratonovich;
  throw std::invalid_argument("calculus must be 'ito' or 'strat'");
}

std::optional<FamilyCoefficients> coefficients(const std::optional<std::vector<std::string>>& params) {
  if (!params) return std::nullopt;
  if (params->size() != 6) throw std::invalid_argument("the family takes six parameters");
  FamilyCoefficients c;
  for (std::size_t i = 0; i < 6; ++i) c[i] = parse_rational((*params)[i]);
  return c;
}

py::dict report_dict(const OrderReport& r) {
  py::list verdicts;
  for (const auto& v : r.verdicts) {
    py::dict d;
    d["subject"] = v.subject;
    d["condition"] = v.condition;
    d["offending"] = v.offending;
    d["residual"] = v.residual;
    d["ok"] = v.ok();
    verdicts.append(d);
  }
  py::dict out;
  out["method"] = r.method;
  out["kind"] = r.kind;
  out["order"] = r.order.to_string();
  out["pass"] = r.pass();
  out["verdicts"] = verdicts;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stochastic B-series: trees, iterated integrals, order conditions and convergence studies.";

  py::register_exception<TreeParseError>(m, "TreeParseError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);

  m.def("canonical", [](const std::string& enc) { return parse_tree(enc).encoding(); }, py::arg("tree"));
  m.def("rho", [](const std::string& enc) { return rho(parse_tree(enc)).to_string(); }, py::arg("tree"));
  m.def("alpha", [](const std::string& enc) { return to_string(alpha(parse_tree(enc))); }, py::arg("tree"));
  m.def(
      "enumerate_trees",
      [](int colors, const std::string& max_rho) {
        std::vector<std::string> out;
        for (const auto& t : enumerate_trees(colors, parse_half_int(max_rho))) out.push_back(t.encoding());
        return out;
      },
      py::arg("m"), py::arg("max_rho"));

  m.def(
      "exact_weight",
      [](const std::string& enc, const std::string& calc) {
        return exact_weight(parse_tree(enc), calculus_from(calc)).to_string();
      },
      py::arg("tree"), py::arg("calculus") = "ito");

  m.def(
      "decompositions",
      [](const std::string& enc) {
        py::list out;
        for (const auto& d : decompositions(parse_tree(enc))) {
          std::vector<std::string> omega;
          for (const auto& t : d.omega) omega.push_back(t.encoding());
          out.append(py::make_tuple(d.theta.encoding(), omega, d.gamma));
        }
        return out;
      },
      py::arg("tree"), "List of (theta, omega, gamma) triples.");

  m.def(
      "check_strong",
      [](const std::string& method, const std::string& order, std::optional<std::vector<std::string>> params,
         bool with_mean) {
        return report_dict(check_strong(method_by_name(method, coefficients(params)), parse_half_int(order), with_mean));
      },
      py::arg("method"), py::arg("order"), py::arg("params") = py::none(), py::arg("with_mean") = true);

  m.def(
      "check_weak",
      [](const std::string& method, int order, std::optional<std::vector<std::string>> params) {
        return report_dict(check_weak(method_by_name(method, coefficients(params)), order));
      },
      py::arg("method"), py::arg("order"), py::arg("params") = py::none());

  m.def(
      "sample_increments",
      [](double h, std::size_t n, std::uint64_t seed) {
        std::mt19937_64 rng(lab::stream_seed(seed, 0));
        std::vector<std::pair<double, double>> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
          const auto inc = lab::sample_increments(h, rng);
          out.emplace_back(inc.dW, inc.dZ);
        }
        return out;
      },
      py::arg("h"), py::arg("n"), py::arg("seed") = 0, "n draws of (dW, dZ) for step h.");

  m.def(
      "strong_error_study",
      [](const std::string& problem, const std::string& method, int level_min, int level_max, std::size_t paths,
         std::uint64_t seed, std::array<double, 6> params, unsigned threads) {
        const SdeProblem p = problems::by_name(problem);
        lab::StudyConfig cfg;
        cfg.scheme = lab::scheme_by_name(method, params);
        cfg.level_min = level_min;
        cfg.level_max = level_max;
        cfg.paths = paths;
        cfg.seed = seed;
        cfg.threads = threads;
        lab::StudyResult r;
        {
          py::gil_scoped_release release;
          r = lab::strong_error_study(cfg, p, p.initial_state);
        }
        py::list levels;
        for (const auto& l : r.levels) {
          py::dict d;
          d["level"] = l.level;
          d["h"] = l.h;
          d["mean_error"] = l.mean_error;
          d["stderr_of_mean"] = l.stderr_of_mean;
          d["failed_paths"] = l.failed_paths;
          levels.append(d);
        }
        py::dict out;
        out["levels"] = levels;
        out["slope"] = r.slope;
        out["intercept"] = r.intercept;
        out["reference"] = r.reference;
        return out;
      },
      py::arg("problem"), py::arg("method"), py::arg("level_min") = 4, py::arg("level_max") = 9,
      py::arg("paths") = 500, py::arg("seed") = 42, py::arg("params") = std::array<double, 6>{0.5, 0.5, 0.5, 0.5, 0.5, 0.5},
      py::arg("threads") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a command-line invocation in process; returns (exit_code, stdout, stderr).");
}

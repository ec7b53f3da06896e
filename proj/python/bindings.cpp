#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anonylink/config.hpp"
#include "anonylink/evaluator.hpp"
#include "anonylink/linkage.hpp"

namespace py = pybind11;
using namespace anonylink;

namespace {

LinkageDistribution dist_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("matrix must be non-empty");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ragged matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return LinkageDistribution(rows.size(), cols, std::move(flat));
}

std::vector<std::vector<double>> dist_to_rows(const LinkageDistribution& d) {
  std::vector<std::vector<double>> rows(d.rows(), std::vector<double>(d.cols()));
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) rows[i][j] = d.at(i, j);
  }
  return rows;
}

GameConfig game_config_from_kwargs(const std::string& scheme, const std::string& attack,
                                   const std::string& medium, std::uint32_t trials,
                                   std::uint64_t seed, std::uint32_t candidates,
                                   std::uint32_t ring_size, std::uint32_t mix_size,
                                   std::uint64_t denomination, bool mixnet,
                                   const std::string& group, std::uint32_t threads) {
  GameConfig cfg;
  cfg.scheme = scheme_from_name(scheme);
  cfg.attack = attack_from_name(attack);
  cfg.medium = medium_from_name(medium);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.candidates = candidates;
  cfg.ring_size = ring_size;
  cfg.mix_size = mix_size;
  cfg.denomination = denomination;
  cfg.mixnet = mixnet;
  cfg.group = group_profile_from_name(group);
  cfg.threads = threads;
  return cfg;
}

py::object json_to_py(const json& j) {
  py::module_ pyjson = py::module_::import("json");
  return pyjson.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_anonylink, m) {
  m.doc() = "coin-scheme simulator and linkability attack harness (compiled core)";

  m.def("schemes", []() {
    std::vector<std::string> names;
    for (SchemeKind k : all_schemes()) names.emplace_back(scheme_name(k));
    return names;
  });

  m.def("deviation_from_uniform",
        [](const std::vector<std::vector<double>>& rows, std::size_t row) {
          return deviation_from_uniform(dist_from_rows(rows), row);
        },
        py::arg("matrix"), py::arg("row"));

  m.def("is_unlinkable",
        [](const std::vector<std::vector<double>>& rows, double epsilon) {
          return is_unlinkable(dist_from_rows(rows), epsilon);
        },
        py::arg("matrix"), py::arg("epsilon") = kDefaultUnlinkabilityEpsilon);

  m.def("transpose_linkage",
        [](const std::vector<std::vector<double>>& rows) {
          return dist_to_rows(transpose_linkage(dist_from_rows(rows)));
        },
        py::arg("matrix"));

  m.def("compose_linkage",
        [](const std::vector<std::vector<double>>& ab, const std::vector<std::vector<double>>& bc) {
          return dist_to_rows(compose_linkage(dist_from_rows(ab), dist_from_rows(bc)));
        },
        py::arg("ab"), py::arg("bc"));

  m.def("sender_unlinkability_product", &sender_unlinkability_product, py::arg("pa"),
        py::arg("pb"));

  m.def("converse_counterexamples",
        [](std::size_t n, std::size_t grid_steps, std::size_t limit) {
          std::vector<std::vector<double>> out;
          for (const auto& ce : converse_counterexample_search(n, grid_steps, limit)) {
            out.push_back(ce.nonuniform);
          }
          return out;
        },
        py::arg("n"), py::arg("grid_steps") = 10, py::arg("limit") = 64);

  m.def("run_game",
        [](const std::string& scheme, const std::string& attack, const std::string& medium,
           std::uint32_t trials, std::uint64_t seed, std::uint32_t candidates,
           std::uint32_t ring_size, std::uint32_t mix_size, std::uint64_t denomination,
           bool mixnet, const std::string& group, std::uint32_t threads) {
          const GameConfig cfg =
              game_config_from_kwargs(scheme, attack, medium, trials, seed, candidates, ring_size,
                                      mix_size, denomination, mixnet, group, threads);
          AttackOutcome outcome;
          {
            py::gil_scoped_release release;
            outcome = run_game(cfg);
          }
          return json_to_py(outcome.to_json());
        },
        py::arg("scheme"), py::arg("attack"), py::arg("medium"), py::arg("trials") = 10000,
        py::arg("seed") = 42, py::arg("candidates") = 8, py::arg("ring_size") = 4,
        py::arg("mix_size") = 4, py::arg("denomination") = 1, py::arg("mixnet") = false,
        py::arg("group") = "desk64", py::arg("threads") = 0);

  m.def("build_matrix",
        [](std::uint32_t trials, std::uint64_t seed, std::uint32_t candidates,
           std::uint32_t ring_size, std::uint32_t mix_size, std::uint64_t denomination,
           bool mixnet, const std::string& group, std::uint32_t threads,
           const std::vector<std::string>& schemes) {
          GameConfig base;
          base.trials = trials;
          base.seed = seed;
          base.candidates = candidates;
          base.ring_size = ring_size;
          base.mix_size = mix_size;
          base.denomination = denomination;
          base.mixnet = mixnet;
          base.group = group_profile_from_name(group);
          base.threads = threads;
          std::vector<SchemeKind> kinds;
          for (const auto& s : schemes) kinds.push_back(scheme_from_name(s));
          EvaluationMatrix m;
          {
            py::gil_scoped_release release;
            m = build_matrix(base, kinds);
          }
          return json_to_py(m.to_json());
        },
        py::arg("trials") = 10000, py::arg("seed") = 42, py::arg("candidates") = 8,
        py::arg("ring_size") = 4, py::arg("mix_size") = 4, py::arg("denomination") = 1,
        py::arg("mixnet") = false, py::arg("group") = "desk64", py::arg("threads") = 0,
        py::arg("schemes") = std::vector<std::string>{});

  m.def("render_matrix",
        [](const py::object& matrix, const std::string& format) {
          py::module_ pyjson = py::module_::import("json");
          const json m = json::parse(pyjson.attr("dumps")(matrix).cast<std::string>());
          return render(EvaluationMatrix::from_json(m), render_format_from_name(format));
        },
        py::arg("matrix"), py::arg("format") = "markdown");

  m.def("verify_matrix",
        [](const py::object& matrix, const py::object& fixture) {
          py::module_ pyjson = py::module_::import("json");
          const json m = json::parse(pyjson.attr("dumps")(matrix).cast<std::string>());
          const json f = json::parse(pyjson.attr("dumps")(fixture).cast<std::string>());
          std::vector<py::dict> out;
          for (const auto& d : verify_against_expected(EvaluationMatrix::from_json(m), f)) {
            py::dict item;
            item["scheme"] = std::string(scheme_name(d.scheme));
            item["attack"] = std::string(attack_name(d.attack));
            item["medium"] = std::string(medium_name(d.medium));
            item["expected"] = d.expected;
            item["computed"] = d.computed;
            out.push_back(std::move(item));
          }
          return out;
        },
        py::arg("matrix"), py::arg("fixture"));

  m.def("default_fixture_path", &default_fixture_path);
}

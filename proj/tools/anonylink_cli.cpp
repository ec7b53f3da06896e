#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "anonylink/config.hpp"
#include "anonylink/evaluator.hpp"
#include "anonylink/linkage.hpp"

namespace {

using namespace anonylink;

constexpr int kExitOk = 0;
constexpr int kExitDiff = 1;
constexpr int kExitConfig = 2;

void write_report(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + out_path);
  f << text;
}

void write_transcript(const std::vector<std::string>& lines, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open transcript file " + path);
  for (const auto& line : lines) f << line << "\n";
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  json j;
  f >> j;
  return j;
}

// flags override config-file values override defaults; the seed env var sits
// between defaults and the file
struct CliOptions {
  std::string config_path;
  bool dump_config = false;
  std::string out_path;
  std::string transcript_path;
  std::string fixture_path;
  std::vector<std::string> scheme_names;
};

int run_theorem_suite(const RunConfig& cfg) {
  Rng rng(Rng::derive(cfg.seed, 0x7468656fULL));
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
    all_ok = all_ok && ok;
    std::cout << (ok ? "pass" : "FAIL") << "  " << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
  };

  {
    bool ok = true;
    for (std::size_t na = 1; na <= 8 && ok; ++na) {
      for (std::size_t nb = 1; nb <= 8 && ok; ++nb) {
        const auto t = transpose_linkage(LinkageDistribution::uniform(na, nb));
        const auto expect = LinkageDistribution::uniform(nb, na);
        ok = t.flat() == expect.flat();
      }
    }
    report("symmetry: uniform transposes to uniform, dims <= 8, exact", ok);
  }
  {
    bool ok = true;
    for (std::size_t na = 1; na <= 8 && ok; ++na) {
      for (std::size_t nb = 1; nb <= 8 && ok; ++nb) {
        for (std::size_t nc = 1; nc <= 8 && ok; ++nc) {
          const auto c = compose_linkage(LinkageDistribution::uniform(na, nb),
                                         LinkageDistribution::uniform(nb, nc));
          ok = c.flat() == LinkageDistribution::uniform(na, nc).flat();
        }
      }
    }
    report("transitivity: uniform composed with uniform stays uniform, dims <= 8, exact", ok);
  }
  {
    bool ok = true;
    for (int iter = 0; iter < 1000 && ok; ++iter) {
      const std::size_t n = 2 + rng.uniform(6), k = 2 + rng.uniform(6);
      std::vector<double> p(n * k);
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0;
        for (std::size_t j = 0; j < k; ++j) {
          p[i * k + j] = rng.unit() + 1e-6;
          sum += p[i * k + j];
        }
        for (std::size_t j = 0; j < k; ++j) p[i * k + j] /= sum;
        double fix = 0;
        for (std::size_t j = 0; j + 1 < k; ++j) fix += p[i * k + j];
        p[i * k + k - 1] = 1.0 - fix;
      }
      LinkageDistribution d(n, k, p);
      const auto t = transpose_linkage(d);
      const auto c = compose_linkage(d, transpose_linkage(d));
      auto stochastic = [](const LinkageDistribution& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
          double s = 0;
          for (std::size_t j = 0; j < m.cols(); ++j) s += m.at(i, j);
          if (std::abs(s - 1.0) > kRowSumTolerance) return false;
        }
        return true;
      };
      ok = stochastic(t) && stochastic(c);
    }
    report("row-stochasticity preserved over 1000 random matrices, tolerance 1e-9", ok);
  }
  {
    bool ok = true;
    for (std::size_t n = 2; n <= 6 && ok; ++n) {
      const std::vector<double> u(n, 1.0 / n);
      ok = sender_unlinkability_product(u, u) == 1.0 / n;
    }
    report("uniform attribution vectors: inner product equals 1/n exactly, n in 2..6", ok);
  }
  {
    const auto found = converse_counterexample_search(3, 10);
    bool has_example = false;
    for (const auto& ce : found) {
      if (std::abs(ce.nonuniform[0] - 0.6) < 1e-12 && std::abs(ce.nonuniform[1] - 0.2) < 1e-12 &&
          std::abs(ce.nonuniform[2] - 0.2) < 1e-12) {
        has_example = true;
      }
    }
    std::ostringstream detail;
    detail << found.size() << " counterexamples on the 0.1 grid; includes (0.6,0.2,0.2)";
    report("converse diagnostic: product 1/n does NOT imply uniformity", has_example,
           detail.str());
  }
  return all_ok ? kExitOk : kExitDiff;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anonylink: deterministic coin-scheme simulator and linkability attack harness"};
  app.require_subcommand(1);

  CliOptions opt;
  RunConfig defaults;
  if (const char* env_seed = std::getenv("ANONYLINK_SEED")) {
    defaults.seed = std::strtoull(env_seed, nullptr, 10);
  }

  // flag holders; only values the user actually passed override the config
  std::string scheme_s, attack_s, medium_s, group_s, format_s;
  std::uint32_t trials = 0, candidates = 0, ring = 0, mix = 0, threads = 0;
  std::uint64_t seed = 0, denom = 0;
  bool mixnet = false;

  app.add_option("--config", opt.config_path, "JSON config file; flags override its values");
  app.add_flag("--dump-config", opt.dump_config, "print the effective config as JSON and exit");
  app.add_option("--seed", seed, "PRNG seed (also: ANONYLINK_SEED)");
  app.add_option("--trials", trials, "Monte-Carlo trials per cell");
  app.add_option("--candidates", candidates, "decoy lineages/coins/values per challenge");
  app.add_option("--ring", ring, "ring size for ring-spend schemes");
  app.add_option("--mix", mix, "participants per mix round");
  app.add_option("--denomination", denom, "fixed denomination value");
  app.add_flag("--mixnet", mixnet, "route transport through an ideal anonymizer");
  app.add_option("--group", group_s, "group profile: desk64 or small32");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--format", format_s, "report format: json, markdown, csv");
  app.add_option("--out", opt.out_path, "write the report here instead of stdout");
  app.add_option("--transcript", opt.transcript_path, "write per-trial JSON lines here");

  auto* run_cmd = app.add_subcommand("run", "run one attack game");
  run_cmd->fallthrough();
  run_cmd->add_option("--scheme", scheme_s, "coin scheme")->required();
  run_cmd->add_option("--attack", attack_s, "slla, tlla, rccla or sccla")->required();
  run_cmd->add_option("--medium", medium_s, "challenge medium, e.g. coin-to-coin")->required();

  auto* matrix_cmd = app.add_subcommand("matrix", "run the full evaluation grid");
  matrix_cmd->fallthrough();
  matrix_cmd->add_option("--schemes", opt.scheme_names, "subset of schemes (default: all)");

  auto* verify_cmd = app.add_subcommand("verify", "run the grid and diff against the fixture");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--fixture", opt.fixture_path, "expected-verdicts fixture file");
  verify_cmd->add_option("--schemes", opt.scheme_names, "subset of schemes (default: all)");

  app.add_subcommand("theorems", "run the linkage-algebra property suite")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    // precedence: flags > ANONYLINK_SEED > config file > defaults
    RunConfig cfg = defaults;
    if (!opt.config_path.empty()) {
      cfg = RunConfig::from_json(load_json_file(opt.config_path));
      if (std::getenv("ANONYLINK_SEED") != nullptr) cfg.seed = defaults.seed;
    }
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--trials")) cfg.trials = trials;
    if (app.count("--candidates")) cfg.candidates = candidates;
    if (app.count("--ring")) cfg.ring_size = ring;
    if (app.count("--mix")) cfg.mix_size = mix;
    if (app.count("--denomination")) cfg.denomination = denom;
    if (app.count("--mixnet")) cfg.mixnet = mixnet;
    if (app.count("--group")) cfg.group = group_profile_from_name(group_s);
    if (app.count("--threads")) cfg.threads = threads;
    if (app.count("--format")) cfg.format = format_s;
    for (const auto& name : opt.scheme_names) cfg.schemes.push_back(scheme_from_name(name));

    auto normalize = [](std::string s) {
      for (auto& ch : s) {
        if (ch == '-') ch = '_';
      }
      return s;
    };

    if (run_cmd->parsed()) {
      cfg.scheme = scheme_from_name(normalize(scheme_s));
      cfg.attack = attack_from_name(normalize(attack_s));
      cfg.medium = medium_from_name(normalize(medium_s));
    }
    if (opt.dump_config) {
      std::cout << cfg.to_json().dump(2) << "\n";
      return kExitOk;
    }

    if (run_cmd->parsed()) {
      GameConfig game = cfg.game_base();
      game.scheme = *cfg.scheme;
      game.attack = *cfg.attack;
      game.medium = *cfg.medium;
      std::vector<std::string> transcript;
      AttackOutcome outcome =
          run_game(game, opt.transcript_path.empty() ? nullptr : &transcript);
      write_transcript(transcript, opt.transcript_path);
      json report = outcome.to_json();
      if (!outcome.applicable || outcome.trials >= kClassifyMinTrials) {
        report["verdict"] = std::string(verdict_class_name(classify(outcome).level));
      }
      write_report(report.dump(2) + "\n", opt.out_path);
      return kExitOk;
    }

    if (matrix_cmd->parsed()) {
      EvaluationMatrix m = build_matrix(cfg.game_base(), cfg.schemes);
      write_report(render(m, render_format_from_name(cfg.format)), opt.out_path);
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const std::string fixture_path =
          opt.fixture_path.empty() ? default_fixture_path() : opt.fixture_path;
      const json fixture = load_json_file(fixture_path);
      EvaluationMatrix m = build_matrix(cfg.game_base(), cfg.schemes);
      const auto diffs = verify_against_expected(m, fixture);
      if (diffs.empty()) {
        std::cout << "verify: all " << m.rows.size() * matrix_columns().size()
                  << " cells match the expected classes\n";
        return kExitOk;
      }
      for (const auto& d : diffs) {
        std::cout << "verify: MISMATCH " << scheme_name(d.scheme) << " " << attack_name(d.attack)
                  << " " << medium_name(d.medium) << ": expected " << d.expected << ", computed "
                  << d.computed << "\n";
      }
      return kExitDiff;
    }

    // theorems
    return run_theorem_suite(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiff;
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "anonylink/config.hpp"
#include "anonylink/evaluator.hpp"

using namespace anonylink;

namespace {

AttackOutcome synthetic(std::uint64_t successes, std::uint64_t trials, double baseline) {
  AttackOutcome o = estimate_advantage(successes, trials, baseline);
  o.scheme = SchemeKind::Zerocash;
  o.attack = Attack::Slla;
  o.medium = Medium::CoinToCoin;
  return o;
}

GameConfig small_base(std::uint32_t trials = 1000, std::uint64_t seed = 42) {
  GameConfig base;
  base.trials = trials;
  base.seed = seed;
  base.group = GroupProfile::Small32;
  return base;
}

json shipped_fixture() {
  std::ifstream f(default_fixture_path());
  REQUIRE(f.good());
  json j;
  f >> j;
  return j;
}

}  // namespace

TEST_CASE("classification rule") {
  // CI overlapping the baseline reads as resistant
  CHECK(classify(synthetic(1260, 10000, 0.125)).level == VerdictClass::Resistant);
  // near-certain success is unresistant
  CHECK(classify(synthetic(9990, 10000, 0.125)).level == VerdictClass::Unresistant);
  // in between: probabilistic, carrying the estimate
  const ResistanceVerdict prob = classify(synthetic(2500, 10000, 0.125));
  CHECK(prob.level == VerdictClass::ProbabilisticallyResistant);
  CHECK(prob.p_est == doctest::Approx(0.25));
  CHECK(prob.p_est > prob.evidence.baseline);
  CHECK(prob.p_est < kUnresistantThreshold);

  // measured companions: equal rates overlap, a wide gap does not
  AttackOutcome paired = synthetic(9900, 10000, 0.0);
  paired.baseline_measured = true;
  paired.baseline = 0.99;
  paired.baseline_ci = wilson_interval(9900, 10000);
  paired.advantage = 0.0;
  CHECK(classify(paired).level == VerdictClass::Resistant);

  CHECK_THROWS_AS(classify(synthetic(100, 500, 0.125)), std::invalid_argument);

  GameConfig na_cfg;
  na_cfg.scheme = SchemeKind::Bitcoin;
  na_cfg.attack = Attack::Rccla;
  na_cfg.medium = Medium::SentCoin;
  CHECK(classify(AttackOutcome::not_applicable(na_cfg, "no secret-sharing layer")).level ==
        VerdictClass::NotApplicable);
}

TEST_CASE("matrix over a scheme subset fills every column") {
  const EvaluationMatrix m = build_matrix(
      small_base(), {SchemeKind::Bitcoin, SchemeKind::Coinshuffle, SchemeKind::Mimblewimble});
  REQUIRE(m.rows.size() == 3);
  for (const auto& row : m.rows) {
    CHECK(row.cells.size() == matrix_columns().size());
  }
  CHECK(m.find(SchemeKind::Bitcoin, Attack::Slla, Medium::CoinToCoin)->verdict.level ==
        VerdictClass::Unresistant);
  CHECK(m.find(SchemeKind::Mimblewimble, Attack::Slla, Medium::CoinToCoin)->verdict.level ==
        VerdictClass::Unresistant);
  CHECK(m.find(SchemeKind::Coinshuffle, Attack::Slla, Medium::CoinToCoin)->verdict.level ==
        VerdictClass::ProbabilisticallyResistant);
  CHECK(m.find(SchemeKind::Bitcoin, Attack::Rccla, Medium::SentCoin)->verdict.level ==
        VerdictClass::NotApplicable);

  SUBCASE("assessments apply the four-condition rule") {
    const auto btc = assess_anonymity(SchemeKind::Bitcoin, m);
    CHECK_FALSE(btc.indirect_deanon_resistant);
    CHECK(btc.addressing == AddressScheme::Pseudonym);

    // ledger-unresistant but addressless still passes
    const auto mw = assess_anonymity(SchemeKind::Mimblewimble, m);
    CHECK(mw.indirect_deanon_resistant);
    CHECK(std::find(mw.reasons.begin(), mw.reasons.end(), "addressless") != mw.reasons.end());
    CHECK(std::find(mw.reasons.begin(), mw.reasons.end(), "slla_unresistant") != mw.reasons.end());

    // probabilistic ledger verdict plus one-time addresses passes
    const auto cs = assess_anonymity(SchemeKind::Coinshuffle, m);
    CHECK(cs.indirect_deanon_resistant);
    CHECK(std::find(cs.reasons.begin(), cs.reasons.end(), "one_time_address") != cs.reasons.end());

    // pure function: same matrix, same result
    CHECK(to_json(assess_anonymity(SchemeKind::Bitcoin, m)) ==
          to_json(assess_anonymity(SchemeKind::Bitcoin, m)));
    CHECK_THROWS_AS(assess_anonymity(SchemeKind::Zerocash, m), std::invalid_argument);
  }

  SUBCASE("json render round-trips to an equal matrix") {
    const json j = m.to_json();
    const EvaluationMatrix back = EvaluationMatrix::from_json(j);
    CHECK(back.to_json().dump() == j.dump());
  }

  SUBCASE("markdown and csv renders") {
    const std::string md = render(m, RenderFormat::Markdown);
    CHECK(md.find("| Mimblewimble |") != std::string::npos);
    CHECK(md.find("✗") != std::string::npos);
    const std::string line = md.substr(md.find("| Mimblewimble |"));
    CHECK(line.substr(0, line.find('\n')).find("✗") != std::string::npos);

    const std::string csv = render(m, RenderFormat::Csv);
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 1 + m.rows.size());
    CHECK(csv.rfind("scheme,", 0) == 0);
    CHECK_THROWS_AS(render_format_from_name("yaml"), std::invalid_argument);
  }

  SUBCASE("verify against the shipped fixture") {
    const json fixture = shipped_fixture();
    CHECK(verify_against_expected(m, fixture).empty());

    json unknown = fixture;
    unknown["expected"]["dogecoin"] = unknown["expected"]["bitcoin"];
    CHECK_THROWS_AS(verify_against_expected(m, unknown), std::invalid_argument);

    CHECK_THROWS_AS(verify_against_expected(m, json::object()), std::invalid_argument);

    json tampered = fixture;
    tampered["expected"]["bitcoin"]["slla"]["coin_to_coin"] = "resistant";
    const auto diffs = verify_against_expected(m, tampered);
    REQUIRE(diffs.size() == 1);
    CHECK(diffs.front().scheme == SchemeKind::Bitcoin);
    CHECK(diffs.front().expected == "resistant");
    CHECK(diffs.front().computed == "unresistant");
  }
}

TEST_CASE("a toggled anonymizer flips exactly the transaction-pairing column") {
  GameConfig base = small_base();
  base.mixnet = true;
  const EvaluationMatrix m = build_matrix(base, {SchemeKind::Zerocash});
  const auto diffs = verify_against_expected(m, shipped_fixture());
  REQUIRE(diffs.size() == 1);
  CHECK(diffs.front().attack == Attack::Tlla);
  CHECK(diffs.front().medium == Medium::TranToTran);
  CHECK(diffs.front().expected == "unresistant");
  CHECK(diffs.front().computed == "resistant");
}

TEST_CASE("run config round-trips through its json document") {
  RunConfig c;
  c.schemes = {SchemeKind::Zerocash, SchemeKind::CryptoNote};
  c.scheme = SchemeKind::CryptoNote;
  c.attack = Attack::Slla;
  c.medium = Medium::CoinToCoin;
  c.trials = 1234;
  c.seed = 99;
  c.candidates = 12;
  c.ring_size = 6;
  c.mix_size = 3;
  c.denomination = 2;
  c.mixnet = true;
  c.group = GroupProfile::Small32;
  c.threads = 3;
  c.format = "csv";
  const RunConfig back = RunConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  const GameConfig g = back.game_base();
  CHECK(g.trials == 1234);
  CHECK(g.ring_size == 6);
  CHECK(g.mixnet);
  CHECK(g.group == GroupProfile::Small32);
  CHECK_THROWS_AS(RunConfig::from_json(json{{"group", "p256"}}), std::invalid_argument);
}

TEST_CASE("matrix propagates per-cell config failures as not-applicable evidence") {
  GameConfig base = small_base();
  base.ring_size = 64;  // no world in the grid can seat such a ring
  const EvaluationMatrix m = build_matrix(base, {SchemeKind::CryptoNote});
  const auto* cell = m.find(SchemeKind::CryptoNote, Attack::Slla, Medium::CoinToCoin);
  REQUIRE(cell != nullptr);
  CHECK(cell->verdict.level == VerdictClass::NotApplicable);
  CHECK(cell->verdict.evidence.note.find("ring") != std::string::npos);
  // time-based cells do not depend on the ring and still classify
  CHECK(m.find(SchemeKind::CryptoNote, Attack::Slla, Medium::CoinToTime)->verdict.level ==
        VerdictClass::Unresistant);

  GameConfig tiny = small_base(100);
  CHECK_THROWS_AS(build_matrix(tiny, {SchemeKind::Bitcoin}), std::invalid_argument);
}

TEST_CASE("matrix builds are reproducible for a fixed seed") {
  const EvaluationMatrix a = build_matrix(small_base(1000, 7), {SchemeKind::Zerocoin});
  const EvaluationMatrix b = build_matrix(small_base(1000, 7), {SchemeKind::Zerocoin});
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.config_digest == b.config_digest);
  const EvaluationMatrix c = build_matrix(small_base(1000, 8), {SchemeKind::Zerocoin});
  CHECK(c.config_digest != a.config_digest);
}

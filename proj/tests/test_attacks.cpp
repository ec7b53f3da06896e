#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anonylink/attacks.hpp"
#include "anonylink/schemes.hpp"

using namespace anonylink;

namespace {

GameConfig quick(SchemeKind s, Attack a, Medium m, std::uint32_t trials = 600,
                 std::uint64_t seed = 5) {
  GameConfig cfg;
  cfg.scheme = s;
  cfg.attack = a;
  cfg.medium = m;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.group = GroupProfile::Small32;
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST_CASE("estimate_advantage: statistics and errors") {
  const AttackOutcome half = estimate_advantage(2500, 10000, 0.25);
  CHECK(half.success_rate == doctest::Approx(0.25));
  CHECK(std::fabs(half.advantage) < 1e-12);
  CHECK(half.wilson_ci_95.hi - half.wilson_ci_95.lo < 0.02);
  CHECK(half.wilson_ci_95.contains(0.25));

  const AttackOutcome sure = estimate_advantage(10000, 10000, 0.125);
  CHECK(sure.advantage == doctest::Approx(0.875));
  CHECK(sure.success_rate == 1.0);

  CHECK_THROWS_AS(estimate_advantage(0, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(estimate_advantage(5, 4, 0.5), std::invalid_argument);
}

TEST_CASE("unsupported attack/medium/scheme combinations are NotApplicable") {
  CHECK_FALSE(run_game(quick(SchemeKind::Bitcoin, Attack::Slla, Medium::TranToTran)).applicable);
  CHECK_FALSE(run_game(quick(SchemeKind::Bitcoin, Attack::Rccla, Medium::SentCoin)).applicable);
  CHECK_FALSE(run_game(quick(SchemeKind::CoinJoin, Attack::Sccla, Medium::ConsumedCoin)).applicable);
  CHECK_FALSE(run_game(quick(SchemeKind::Zerocash, Attack::Slla, Medium::ConsumedCoin)).applicable);
  CHECK(run_game(quick(SchemeKind::Zerocash, Attack::Rccla, Medium::SentCoin)).applicable);
}

TEST_CASE("bad configs throw instead of reporting") {
  GameConfig cfg = quick(SchemeKind::CryptoNote, Attack::Slla, Medium::CoinToCoin);
  cfg.ring_size = 32;  // larger than the candidate pool
  CHECK_THROWS_AS(run_game(cfg), std::invalid_argument);
  GameConfig zero = quick(SchemeKind::Bitcoin, Attack::Slla, Medium::CoinToCoin);
  zero.trials = 0;
  CHECK_THROWS_AS(run_game(zero), std::invalid_argument);
  GameConfig one_candidate = quick(SchemeKind::Bitcoin, Attack::Slla, Medium::CoinToCoin);
  one_candidate.candidates = 1;
  CHECK_THROWS_AS(run_game(one_candidate), std::invalid_argument);
}

TEST_CASE("same seed reproduces a run exactly; transcripts expose per-trial records") {
  const GameConfig cfg = quick(SchemeKind::Zerocash, Attack::Slla, Medium::CoinToCoin, 200);
  std::vector<std::string> t1, t2;
  const AttackOutcome a = run_game(cfg, &t1);
  const AttackOutcome b = run_game(cfg, &t2);
  CHECK(a.to_json().dump() == b.to_json().dump());
  REQUIRE(t1.size() == 200);
  CHECK(t1 == t2);
  const json line = json::parse(t1.front());
  CHECK(line.contains("guess"));
  CHECK(line.contains("truth"));
  CHECK(line.contains("correct"));
  CHECK(line.contains("view_digest"));

  GameConfig other = cfg;
  other.seed = 6;
  std::vector<std::string> t3;
  run_game(other, &t3);
  CHECK(t1 != t3);
}

TEST_CASE("thread fan-out never changes the result") {
  GameConfig cfg = quick(SchemeKind::CryptoNote, Attack::Slla, Medium::CoinToCoin, 300);
  cfg.threads = 1;
  const AttackOutcome serial = run_game(cfg);
  cfg.threads = 7;
  const AttackOutcome parallel = run_game(cfg);
  CHECK(serial.to_json().dump() == parallel.to_json().dump());
}

TEST_CASE("scripted random guesser lands on the analytic baseline") {
  // calibration harness: the uniform adversary's rate must sit inside its own
  // Wilson interval around 1/m for representative cells
  for (auto [scheme, attack, medium] :
       {std::tuple{SchemeKind::Bitcoin, Attack::Slla, Medium::CoinToCoin},
        std::tuple{SchemeKind::CoinJoin, Attack::Slla, Medium::CoinToCoin},
        std::tuple{SchemeKind::Mimblewimble, Attack::Slla, Medium::CoinToCoin},
        std::tuple{SchemeKind::Zerocoin, Attack::Slla, Medium::CoinToValue},
        std::tuple{SchemeKind::CryptoNote, Attack::Slla, Medium::CoinToValue},
        std::tuple{SchemeKind::CryptoNote, Attack::Slla, Medium::CoinToTime},
        std::tuple{SchemeKind::CryptoNote, Attack::Tlla, Medium::CoinToCoin},
        std::tuple{SchemeKind::Zerocash, Attack::Tlla, Medium::TranToTran},
        std::tuple{SchemeKind::Zerocash, Attack::Rccla, Medium::SentCoin},
        std::tuple{SchemeKind::Mimblewimble, Attack::Sccla, Medium::ConsumedCoin}}) {
    GameConfig cfg = quick(scheme, attack, medium, 3000, 9);
    cfg.random_adversary = true;
    const AttackOutcome o = run_game(cfg);
    CAPTURE(scheme_name(scheme));
    CAPTURE(medium_name(medium));
    CHECK(o.wilson_ci_95.contains(o.baseline));
  }
}

TEST_CASE("known rates: direct trace, ring fraction, baseline-bound schemes") {
  const AttackOutcome btc = run_game(quick(SchemeKind::Bitcoin, Attack::Slla, Medium::CoinToCoin));
  CHECK(btc.success_rate == 1.0);

  GameConfig cn = quick(SchemeKind::CryptoNote, Attack::Slla, Medium::CoinToCoin, 3000);
  cn.ring_size = 2;
  const AttackOutcome half = run_game(cn);
  CHECK(half.wilson_ci_95.contains(0.5));

  const AttackOutcome zc =
      run_game(quick(SchemeKind::Zerocash, Attack::Slla, Medium::CoinToCoin, 3000));
  CHECK(zc.wilson_ci_95.contains(zc.baseline));
}

TEST_CASE("transport capability never hurts: relay sees at least the ledger-only rate") {
  for (SchemeKind s : {SchemeKind::Bitcoin, SchemeKind::Zerocash, SchemeKind::CryptoNote}) {
    CAPTURE(scheme_name(s));
    const AttackOutcome slla = run_game(quick(s, Attack::Slla, Medium::CoinToCoin, 1500));
    const AttackOutcome tlla = run_game(quick(s, Attack::Tlla, Medium::CoinToCoin, 1500));
    CHECK(tlla.success_rate + tlla.wilson_ci_95.half_width() >=
          slla.success_rate - slla.wilson_ci_95.half_width());
  }
}

TEST_CASE("ideal anonymizer collapses transaction pairing to the baseline") {
  GameConfig cfg = quick(SchemeKind::Zerocash, Attack::Tlla, Medium::TranToTran, 3000, 11);
  const AttackOutcome clear = run_game(cfg);
  CHECK(clear.success_rate == 1.0);
  cfg.mixnet = true;
  const AttackOutcome mixed = run_game(cfg);
  CHECK(mixed.wilson_ci_95.contains(mixed.baseline));
}

TEST_CASE("chosen-coin games report paired advantage over the ledger-only companion") {
  const AttackOutcome mw =
      run_game(quick(SchemeKind::Mimblewimble, Attack::Sccla, Medium::ConsumedCoin, 1200));
  CHECK(mw.baseline_measured);
  CHECK(mw.success_rate == 1.0);
  CHECK(mw.advantage > 0.5);

  const AttackOutcome zc =
      run_game(quick(SchemeKind::Zerocash, Attack::Sccla, Medium::ConsumedCoin, 1200));
  CHECK(zc.baseline_measured);
  // coupled guess streams: identical strategies produce identical picks
  CHECK(zc.advantage == 0.0);

  const AttackOutcome rc =
      run_game(quick(SchemeKind::Mimblewimble, Attack::Rccla, Medium::SentCoin, 1200));
  // the handed-over token is already visible to the ledger-only adversary
  CHECK(rc.success_rate == 1.0);
  CHECK(rc.baseline == 1.0);
  CHECK(rc.advantage == 0.0);
}

TEST_CASE("adversary view serializes without any ground-truth fields") {
  for (SchemeKind s : {SchemeKind::Zerocash, SchemeKind::Mimblewimble, SchemeKind::CryptoNote}) {
    CAPTURE(scheme_name(s));
    WorldConfig wc;
    wc.scheme = s;
    wc.subjects = 4;
    wc.seed = 3;
    wc.ring_size = 3;
    wc.group = GroupProfile::Small32;
    World w(wc);
    std::vector<OutPoint> coins;
    for (SubjectId i = 0; i < 4; ++i) coins.push_back(w.scheme().mint(w, i, 10));
    w.advance_round();
    transfer(w, 0, 1, {coins[0]});

    AdversaryView view;
    view.ledger = &w.ledger();
    view.transport = &w.transport();
    const std::string dumped = view.to_json().dump();
    CHECK(dumped.find("ground_truth") == std::string::npos);
    CHECK(dumped.find("owner") == std::string::npos);
    CHECK(dumped.find("created_by") == std::string::npos);
    CHECK(dumped.find("consumed_round") == std::string::npos);
    // opaque schemes additionally leak no amounts through the view
    CHECK(dumped.find("\"value\"") == std::string::npos);
  }
}

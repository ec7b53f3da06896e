#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anonylink/schemes.hpp"
#include "anonylink/world.hpp"

using namespace anonylink;

namespace {

WorldConfig cfg_for(SchemeKind scheme, std::uint32_t subjects, std::uint64_t seed = 7) {
  WorldConfig c;
  c.scheme = scheme;
  c.subjects = subjects;
  c.seed = seed;
  c.group = GroupProfile::Small32;
  return c;
}

// a fixed little script: mint to everyone, transfer 0 -> 1, churn 1 -> 2
void run_script(World& w) {
  std::vector<OutPoint> coins;
  for (SubjectId s = 0; s < w.config().subjects; ++s) {
    coins.push_back(w.scheme().mint(w, s, w.config().scheme == SchemeKind::Zerocoin
                                               ? w.config().denomination
                                               : 10));
  }
  w.advance_round();
  transfer(w, 0, 1, {coins[0]});
  w.advance_round();
  w.scheme().scan_and_receive(w, 1);
  const auto idx = w.wallet(1).unspent_indices();
  transfer(w, 1, 2, {w.wallet(1).coins[idx.front()].where});
}

}  // namespace

TEST_CASE("new world: keyed subjects, empty ledger, deterministic") {
  World w(cfg_for(SchemeKind::Zerocash, 4));
  CHECK(w.subjects().size() == 4);
  CHECK(w.ledger().size() == 0);
  CHECK(w.transport().empty());
  for (const auto& s : w.subjects()) {
    REQUIRE(s.note_pk.has_value());
    REQUIRE(s.note_sk.has_value());
  }
  // distinct pseudonyms across subjects
  CHECK(w.subjects()[0].note_pk != w.subjects()[1].note_pk);
}

TEST_CASE("new world rejects configs the scheme cannot satisfy") {
  WorldConfig c = cfg_for(SchemeKind::CryptoNote, 2);
  c.ring_size = 4;
  CHECK_THROWS_AS(World{c}, std::invalid_argument);  // too few subjects for decoy rings
  WorldConfig c2 = cfg_for(SchemeKind::Bitcoin, 1);
  CHECK_THROWS_AS(World{c2}, std::invalid_argument);
  CHECK_THROWS_AS(scheme_from_name("dogecoin"), std::invalid_argument);
}

TEST_CASE("identical config and script reproduce the trace bit for bit") {
  for (SchemeKind k : all_schemes()) {
    CAPTURE(scheme_name(k));
    World a(cfg_for(k, 5, 99));
    World b(cfg_for(k, 5, 99));
    run_script(a);
    run_script(b);
    CHECK(a.trace_json().dump() == b.trace_json().dump());
    World c(cfg_for(k, 5, 100));
    run_script(c);
    CHECK(a.trace_json().dump() != c.trace_json().dump());
  }
}

TEST_CASE("submit records exactly one observation from the scheme-defined party") {
  World btc(cfg_for(SchemeKind::Bitcoin, 3));
  const OutPoint coin = btc.scheme().mint(btc, 0, 10);
  const std::size_t before = btc.transport().size();
  transfer(btc, 0, 1, {coin});
  REQUIRE(btc.transport().size() == before + 1);
  CHECK(btc.transport().back().origin == btc.subjects()[0].addr);  // sender submits
  CHECK(btc.transport().back().visibility == PayloadVisibility::Cleartext);

  World mw(cfg_for(SchemeKind::Mimblewimble, 3));
  const OutPoint token = mw.scheme().mint(mw, 0, 10);
  transfer(mw, 0, 1, {token});
  // last observation is the transaction, submitted by the recipient;
  // the secret share left the sender just before it
  const auto& obs = mw.transport();
  REQUIRE(obs.size() >= 2);
  CHECK(obs.back().payload_kind == PayloadKind::Transaction);
  CHECK(obs.back().origin == mw.subjects()[1].addr);
  CHECK(obs[obs.size() - 2].payload_kind == PayloadKind::Share);
  CHECK(obs[obs.size() - 2].origin == mw.subjects()[0].addr);
  CHECK(obs.back().visibility == PayloadVisibility::Opaque);
}

TEST_CASE("every submit and share yields exactly one observation") {
  for (SchemeKind k : all_schemes()) {
    CAPTURE(scheme_name(k));
    World w(cfg_for(k, 5));
    run_script(w);
    std::size_t tx_obs = 0, share_obs = 0;
    for (const auto& o : w.transport()) {
      (o.payload_kind == PayloadKind::Transaction ? tx_obs : share_obs)++;
    }
    CHECK(tx_obs == w.ledger().size());
    std::size_t shares_received = 0;
    for (SubjectId s = 0; s < w.config().subjects; ++s) {
      shares_received += w.wallet(s).received_shares.size();
    }
    CHECK(share_obs == shares_received);
  }
}

TEST_CASE("double spends are rejected and leave the ledger untouched") {
  World w(cfg_for(SchemeKind::Zerocash, 3));
  const OutPoint coin = w.scheme().mint(w, 0, 10);
  w.advance_round();
  PreparedTransfer first = w.scheme().build_transfer(w, 0, 1, {coin}, {});
  PreparedTransfer second = w.scheme().build_transfer(w, 0, 2, {coin}, {});
  w.submit_prepared(first);
  const std::size_t n = w.ledger().size();
  const Digest32 prefix = w.ledger().prefix_digest(n);
  // the same serial number again is a double spend
  CHECK_THROWS_AS(w.submit_prepared(second), ValidationError);
  CHECK(w.ledger().size() == n);
  CHECK(w.ledger().prefix_digest(n) == prefix);
  try {
    w.submit_prepared(second);
  } catch (const ValidationError& e) {
    CHECK(e.reason() == RejectReason::DoubleSpend);
  }
}

TEST_CASE("ledger is append-only under every operation") {
  for (SchemeKind k : all_schemes()) {
    CAPTURE(scheme_name(k));
    World w(cfg_for(k, 5));
    std::vector<Digest32> prefixes;
    auto checkpoint = [&] {
      // all earlier prefixes must still hash identically
      for (std::size_t i = 0; i < prefixes.size(); ++i) {
        REQUIRE(w.ledger().prefix_digest(i) == prefixes[i]);
      }
      while (prefixes.size() <= w.ledger().size()) {
        prefixes.push_back(w.ledger().prefix_digest(prefixes.size()));
      }
    };
    checkpoint();
    std::vector<OutPoint> coins;
    for (SubjectId s = 0; s < 5; ++s) {
      coins.push_back(w.scheme().mint(w, s, k == SchemeKind::Zerocoin ? 1 : 10));
      checkpoint();
    }
    w.advance_round();
    transfer(w, 0, 1, {coins[0]});
    checkpoint();
    transfer(w, 2, 3, {coins[2]});
    checkpoint();
  }
}

TEST_CASE("value conservation holds through mint, transfer and change") {
  for (SchemeKind k : all_schemes()) {
    CAPTURE(scheme_name(k));
    World w(cfg_for(k, 5));
    CHECK(w.conservation_holds());
    run_script(w);
    CHECK(w.conservation_holds());
  }
  // split with change
  World w(cfg_for(SchemeKind::Zerocash, 3));
  const OutPoint coin = w.scheme().mint(w, 0, 10);
  w.advance_round();
  TransferParams p;
  p.pay_value = 3;
  transfer(w, 0, 1, {coin}, p);
  CHECK(w.conservation_holds());
}

TEST_CASE("secret shares require known subjects and reach the recipient wallet") {
  World w(cfg_for(SchemeKind::Zerocash, 3));
  SecretShare share;
  share.scheme = SchemeKind::Zerocash;
  CHECK_THROWS_AS(w.send_secret_share(0, 9, share), std::invalid_argument);
  w.send_secret_share(0, 2, share);
  CHECK(w.wallet(2).received_shares.size() == 1);
  CHECK(w.transport().back().payload_kind == PayloadKind::Share);
}

TEST_CASE("ideal transport anonymizer") {
  World w(cfg_for(SchemeKind::Bitcoin, 3));
  const OutPoint c0 = w.scheme().mint(w, 0, 10);
  const OutPoint c1 = w.scheme().mint(w, 0, 10);
  const OutPoint c2 = w.scheme().mint(w, 0, 10);
  const OutPoint c3 = w.scheme().mint(w, 0, 10);
  w.advance_round();

  // disabled: same node, identical observed origins
  transfer(w, 0, 1, {c0});
  transfer(w, 0, 1, {c1});
  const auto obs_of = [&](std::size_t i) { return w.transport()[w.transport().size() - i]; };
  CHECK(obs_of(1).origin == obs_of(2).origin);

  const auto frozen = w.transport();
  w.set_transport_anonymizer(true);
  transfer(w, 0, 1, {c2});
  transfer(w, 0, 1, {c3});
  // enabled: fresh pseudonymous origin per message
  CHECK_FALSE(obs_of(1).origin == obs_of(2).origin);
  CHECK_FALSE(obs_of(1).origin == w.subjects()[0].addr);
  // toggling never rewrites the earlier log
  for (std::size_t i = 0; i < frozen.size(); ++i) {
    CHECK(w.transport()[i].origin == frozen[i].origin);
  }
}

TEST_CASE("trace serialization is canonical json with ground truth covering the ledger") {
  World w(cfg_for(SchemeKind::Mimblewimble, 4));
  run_script(w);
  const json t = w.trace_json();
  CHECK(t.contains("ledger"));
  CHECK(t.contains("transport"));
  CHECK(t.contains("ground_truth"));
  CHECK(t.at("rng_seed") == 7);
  // every output of every entry has a ground-truth record
  std::size_t outputs = 0;
  for (const auto& e : w.ledger().entries()) outputs += e.tx.outputs.size();
  CHECK(t.at("ground_truth").size() == outputs);
}

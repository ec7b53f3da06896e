#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anonylink/schemes.hpp"
#include "anonylink/stats.hpp"
#include "anonylink/world.hpp"

namespace anonylink {

// The four experiment roles: ledger-only observer, transport relay observer,
// malicious coin recipient, malicious coin sender.
enum class Attack : std::uint8_t { Slla, Tlla, Rccla, Sccla };

enum class Medium : std::uint8_t {
  CoinToCoin,
  CoinToValue,
  CoinToTime,
  TranToTran,
  SentCoin,
  ConsumedCoin,
};

std::string_view attack_name(Attack a);
Attack attack_from_name(std::string_view name);
std::string_view medium_name(Medium m);
Medium medium_from_name(std::string_view name);
// which architecture layer an attack observes from
std::string_view attack_layer(Attack a);

bool attack_supports_medium(Attack a, Medium m);
bool scheme_supports_attack(SchemeKind scheme, Attack a);

struct GameConfig {
  SchemeKind scheme = SchemeKind::Bitcoin;
  Attack attack = Attack::Slla;
  Medium medium = Medium::CoinToCoin;
  std::uint32_t trials = 10000;
  std::uint64_t seed = 42;
  std::uint32_t candidates = 8;  // decoy lineages / coins / values per challenge
  std::uint32_t ring_size = 4;
  std::uint32_t mix_size = 4;
  std::uint64_t denomination = 1;
  bool mixnet = false;
  GroupProfile group = GroupProfile::Desk64;
  std::uint32_t threads = 0;  // 0 = hardware concurrency
  // replaces the per-scheme strategy with a uniform guess; used to calibrate
  // measured baselines against the analytic ones
  bool random_adversary = false;
};

struct AttackOutcome {
  SchemeKind scheme = SchemeKind::Bitcoin;
  Attack attack = Attack::Slla;
  Medium medium = Medium::CoinToCoin;
  bool applicable = true;
  std::string note;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double success_rate = 0.0;
  Interval wilson_ci_95{0.0, 0.0};
  // For ledger/transport games the baseline is the analytic random-guess
  // rate. For the chosen-coin games it is the measured success of the
  // ledger-only companion adversary on the same trials, and advantage over it
  // is what the verdict is judged on.
  double baseline = 0.0;
  Interval baseline_ci{0.0, 0.0};
  std::uint64_t baseline_successes = 0;  // measured companions only
  bool baseline_measured = false;
  double advantage = 0.0;

  json to_json() const;
  static AttackOutcome not_applicable(const GameConfig& cfg, std::string note);
};

// Wilson statistics for a finished experiment.
AttackOutcome estimate_advantage(std::uint64_t successes, std::uint64_t trials, double baseline);

// Runs one (scheme, attack, medium) cell. Transcript, when non-null, receives
// one JSON line per trial. Throws std::invalid_argument on bad configs;
// unsupported (attack, medium, scheme) combinations yield a NotApplicable
// outcome instead.
AttackOutcome run_game(const GameConfig& cfg, std::vector<std::string>* transcript = nullptr);

AttackOutcome run_slla(const GameConfig& cfg);
AttackOutcome run_tlla(const GameConfig& cfg);
AttackOutcome run_rccla(const GameConfig& cfg);
AttackOutcome run_sccla(const GameConfig& cfg);

// What the adversary is given. Built from public data plus whatever the
// attacker role is entitled to; ground truth is unreachable by construction.
struct AdversaryView {
  const SharedLedger* ledger = nullptr;
  const std::vector<TransportObservation>* transport = nullptr;  // relay role only
  std::vector<const WalletStore*> own_wallets;                   // chosen-coin roles
  json private_notes;  // attacker-chosen parameters and remembered secrets

  json to_json() const;
};

}  // namespace anonylink

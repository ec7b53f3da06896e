#include "anonylink/attacks.hpp"

#include <algorithm>
#include <functional>
#include <thread>

namespace anonylink {

namespace {

constexpr std::uint64_t kGuessSalt = 0x6775657373ULL;   // adversary guess stream
constexpr std::uint64_t kTrialSalt = 0x747269616cULL;   // per-trial world stream

std::uint64_t cell_seed(const GameConfig& cfg) {
  return digest_to_u64(KeyedHash("game-cell")
                           .feed(scheme_name(cfg.scheme))
                           .feed(attack_name(cfg.attack))
                           .feed(medium_name(cfg.medium))
                           .feed_u64(cfg.seed)
                           .digest());
}

json outpoint_json(const OutPoint& op) { return to_json(op); }

}  // namespace

std::string_view attack_name(Attack a) {
  switch (a) {
    case Attack::Slla: return "slla";
    case Attack::Tlla: return "tlla";
    case Attack::Rccla: return "rccla";
    case Attack::Sccla: return "sccla";
  }
  return "?";
}

Attack attack_from_name(std::string_view name) {
  for (Attack a : {Attack::Slla, Attack::Tlla, Attack::Rccla, Attack::Sccla}) {
    if (attack_name(a) == name) return a;
  }
  throw std::invalid_argument("unknown attack: " + std::string(name));
}

std::string_view medium_name(Medium m) {
  switch (m) {
    case Medium::CoinToCoin: return "coin_to_coin";
    case Medium::CoinToValue: return "coin_to_value";
    case Medium::CoinToTime: return "coin_to_time";
    case Medium::TranToTran: return "tran_to_tran";
    case Medium::SentCoin: return "sent_coin";
    case Medium::ConsumedCoin: return "consumed_coin";
  }
  return "?";
}

Medium medium_from_name(std::string_view name) {
  for (Medium m : {Medium::CoinToCoin, Medium::CoinToValue, Medium::CoinToTime,
                   Medium::TranToTran, Medium::SentCoin, Medium::ConsumedCoin}) {
    if (medium_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown medium: " + std::string(name));
}

std::string_view attack_layer(Attack a) {
  switch (a) {
    case Attack::Slla: return "ledger";
    case Attack::Tlla: return "transport";
    case Attack::Rccla:
    case Attack::Sccla: return "secret_sharing";
  }
  return "?";
}

bool attack_supports_medium(Attack a, Medium m) {
  switch (a) {
    case Attack::Slla:
      return m == Medium::CoinToCoin || m == Medium::CoinToValue || m == Medium::CoinToTime;
    case Attack::Tlla:
      return m == Medium::TranToTran || m == Medium::CoinToCoin;
    case Attack::Rccla:
      return m == Medium::SentCoin || m == Medium::CoinToValue || m == Medium::CoinToTime;
    case Attack::Sccla:
      return m == Medium::ConsumedCoin || m == Medium::CoinToValue || m == Medium::CoinToTime;
  }
  return false;
}

bool scheme_supports_attack(SchemeKind scheme, Attack a) {
  if (a == Attack::Slla || a == Attack::Tlla) return true;
  return make_scheme(scheme)->has_secret_share_layer();
}

json AdversaryView::to_json() const {
  json j;
  json entries = json::array();
  if (ledger != nullptr) {
    for (const auto& e : ledger->entries()) entries.push_back(anonylink::to_json(e));
  }
  j["ledger"] = std::move(entries);
  if (transport != nullptr) {
    json obs = json::array();
    for (const auto& o : *transport) obs.push_back(anonylink::to_json(o));
    j["transport"] = std::move(obs);
  }
  if (!own_wallets.empty()) {
    json wallets = json::array();
    for (const auto* w : own_wallets) {
      wallets.push_back(json{{"coins", w->coins.size()}, {"shares", w->received_shares.size()}});
    }
    j["own_wallets"] = std::move(wallets);
  }
  if (!private_notes.empty()) j["private_notes"] = private_notes;
  return j;
}

json AttackOutcome::to_json() const {
  json j{{"scheme", std::string(scheme_name(scheme))},
         {"attack", std::string(attack_name(attack))},
         {"layer", std::string(attack_layer(attack))},
         {"medium", std::string(medium_name(medium))},
         {"applicable", applicable}};
  if (!applicable) {
    j["note"] = note;
    return j;
  }
  j["trials"] = trials;
  j["successes"] = successes;
  j["success_rate"] = success_rate;
  j["wilson_ci_95"] = json::array({wilson_ci_95.lo, wilson_ci_95.hi});
  j["baseline"] = baseline;
  j["baseline_measured"] = baseline_measured;
  if (baseline_measured) {
    j["baseline_ci_95"] = json::array({baseline_ci.lo, baseline_ci.hi});
    j["baseline_successes"] = baseline_successes;
  }
  j["advantage"] = advantage;
  if (!note.empty()) j["note"] = note;
  return j;
}

AttackOutcome AttackOutcome::not_applicable(const GameConfig& cfg, std::string note) {
  AttackOutcome o;
  o.scheme = cfg.scheme;
  o.attack = cfg.attack;
  o.medium = cfg.medium;
  o.applicable = false;
  o.note = std::move(note);
  return o;
}

AttackOutcome estimate_advantage(std::uint64_t successes, std::uint64_t trials, double baseline) {
  if (trials == 0) throw std::invalid_argument("no trials to estimate from");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  AttackOutcome o;
  o.trials = trials;
  o.successes = successes;
  o.success_rate = static_cast<double>(successes) / static_cast<double>(trials);
  o.wilson_ci_95 = wilson_interval(successes, trials);
  o.baseline = baseline;
  o.baseline_ci = Interval{baseline, baseline};
  o.advantage = o.success_rate - baseline;
  return o;
}

namespace {

// ---------------------------------------------------------------------------
// scenario plumbing
// ---------------------------------------------------------------------------

struct TrialOutput {
  bool adversary_correct = false;
  bool baseline_correct = false;
  json line;  // transcript
};

struct Lineages {
  std::vector<OutPoint> roots;
  std::vector<OutPoint> created;  // per lineage, the coin the transfer created
  std::vector<std::uint64_t> root_values;
};

void check_books(const World& world) {
  if (!world.conservation_holds()) {
    throw std::logic_error("value conservation violated during a trial");
  }
}

WorldConfig world_config_for(const GameConfig& cfg, std::uint32_t subjects,
                             std::uint64_t trial_seed) {
  WorldConfig wc;
  wc.scheme = cfg.scheme;
  wc.subjects = std::max(subjects, make_scheme(cfg.scheme)->min_subjects(WorldConfig{
                                       cfg.scheme, 2, 0, cfg.ring_size, cfg.mix_size,
                                       cfg.denomination, cfg.group, cfg.mixnet}));
  wc.seed = trial_seed;
  wc.ring_size = cfg.ring_size;
  wc.mix_size = cfg.mix_size;
  wc.denomination = cfg.denomination;
  wc.group = cfg.group;
  wc.mixnet = cfg.mixnet;
  return wc;
}

bool is_mixing(SchemeKind s) {
  return s == SchemeKind::CoinJoin || s == SchemeKind::Coinshuffle;
}

std::uint64_t lineage_value(const GameConfig& cfg) {
  return cfg.scheme == SchemeKind::Zerocoin ? cfg.denomination : 10;
}

// m lineages: root coins minted from the faucet, then one anonymizing
// transfer per lineage (a joint mix for the mixing schemes), interleaved in a
// seeded random order so ledger position carries no signal.
Lineages run_lineages(World& world, const GameConfig& cfg,
                      const std::vector<std::uint64_t>& values) {
  const std::uint32_t m = cfg.candidates;
  Lineages lin;
  lin.root_values = values;
  for (std::uint32_t i = 0; i < m; ++i) {
    lin.roots.push_back(world.scheme().mint(world, i, values[i]));
  }
  world.advance_round();
  std::vector<std::uint32_t> order(m);
  for (std::uint32_t i = 0; i < m; ++i) order[i] = i;
  world.rng().shuffle(order);
  lin.created.resize(m);

  if (is_mixing(cfg.scheme)) {
    std::vector<std::vector<std::uint32_t>> groups;
    for (std::uint32_t i = 0; i < m;) {
      std::uint32_t take = std::min<std::uint32_t>(cfg.mix_size, m - i);
      if (m - i - take == 1) ++take;  // never leave a 1-party remainder
      groups.emplace_back(order.begin() + i, order.begin() + i + take);
      i += take;
    }
    for (const auto& group : groups) {
      if (group.size() < 2) throw std::invalid_argument("mix group needs at least 2 lineages");
      std::vector<MixLeg> legs;
      for (std::uint32_t j : group) {
        legs.push_back(MixLeg{j, lin.roots[j], m + j});
      }
      const std::uint64_t e = world.scheme().run_mix_round(world, legs);
      const auto& entry = world.ledger().at(e);
      for (std::uint32_t i = 0; i < entry.tx.outputs.size(); ++i) {
        const OutPoint op{e, i};
        const auto& rec = world.truth_of(op);
        for (std::uint32_t j : group) {
          if (rec.parent == lin.roots[j]) lin.created[j] = op;
        }
      }
      world.advance_round();
    }
  } else {
    std::vector<PreparedTransfer> built;
    built.reserve(m);
    for (std::uint32_t j : order) {
      built.push_back(world.scheme().build_transfer(world, j, m + j, {lin.roots[j]}, {}));
    }
    for (std::size_t k = 0; k < built.size(); ++k) {
      const std::uint64_t e = world.submit_prepared(built[k]);
      lin.created[order[k]] = OutPoint{e, 0};
      world.advance_round();
    }
  }
  return lin;
}

// ---------------------------------------------------------------------------
// adversary strategies: minimal realizations of what each scheme's public
// record supports
// ---------------------------------------------------------------------------

OutPoint guess_source_coin(SchemeKind scheme, const AdversaryView& view, const OutPoint& target,
                           const std::vector<OutPoint>& candidates, Rng& rng, bool random_only) {
  if (!random_only) {
    const LedgerEntry& entry = view.ledger->at(target.entry);
    switch (scheme) {
      case SchemeKind::Bitcoin:
      case SchemeKind::CoinJoin:
      case SchemeKind::Coinshuffle: {
        std::vector<OutPoint> ins;
        for (const auto& in : entry.tx.inputs) {
          if (in.spends) ins.push_back(*in.spends);
        }
        if (ins.size() == 1) return ins.front();
        if (!ins.empty()) return ins[rng.uniform(ins.size())];
        break;
      }
      case SchemeKind::CryptoNote: {
        if (!entry.tx.inputs.empty() && !entry.tx.inputs.front().ring.empty()) {
          const auto& ring = entry.tx.inputs.front().ring;
          return ring[rng.uniform(ring.size())];
        }
        break;
      }
      case SchemeKind::Mimblewimble: {
        if (!entry.tx.inputs.empty() && entry.tx.inputs.front().commitment) {
          const GroupElt token = *entry.tx.inputs.front().commitment;
          for (const auto& cand : candidates) {
            const auto& out = view.ledger->output_at(cand);
            if (out.pedersen && *out.pedersen == token) return cand;
          }
        }
        break;
      }
      default:
        break;  // serial-number schemes: the reveal points at nothing
    }
  }
  return candidates[rng.uniform(candidates.size())];
}

std::uint64_t guess_value(const GameConfig& cfg, const AdversaryView& view, const OutPoint& target,
                          const std::vector<std::uint64_t>& candidates, Rng& rng,
                          bool random_only) {
  if (!random_only) {
    const auto& out = view.ledger->output_at(target);
    if (out.value) return *out.value;  // cleartext amount
    if (cfg.scheme == SchemeKind::Zerocoin) return cfg.denomination;
  }
  return candidates[rng.uniform(candidates.size())];
}

// ---------------------------------------------------------------------------
// ledger / transport games
// ---------------------------------------------------------------------------

TrialOutput trial_coin_to_coin(const GameConfig& cfg, std::uint64_t trial_seed,
                               bool with_transport, bool want_line) {
  const std::uint32_t m = cfg.candidates;
  World world(world_config_for(cfg, 2 * m, trial_seed));
  const std::vector<std::uint64_t> values(m, lineage_value(cfg));
  const Lineages lin = run_lineages(world, cfg, values);
  const std::uint32_t c = static_cast<std::uint32_t>(world.rng().uniform(m));

  check_books(world);
  AdversaryView view;
  view.ledger = &world.ledger();
  if (with_transport) view.transport = &world.transport();
  Rng guess_rng(Rng::derive(trial_seed, kGuessSalt));
  const OutPoint guess =
      guess_source_coin(cfg.scheme, view, lin.created[c], lin.roots, guess_rng, cfg.random_adversary);

  TrialOutput out;
  out.adversary_correct = (guess == lin.roots[c]);
  if (want_line) {
    out.line = json{{"challenge", json{{"target", outpoint_json(lin.created[c])}}},
                    {"guess", outpoint_json(guess)},
                    {"truth", outpoint_json(lin.roots[c])},
                    {"correct", out.adversary_correct},
                    {"view_digest", hex_prefix(Sha256::of(view.to_json().dump()), 8)}};
  }
  return out;
}

TrialOutput trial_coin_to_value(const GameConfig& cfg, std::uint64_t trial_seed, bool want_line) {
  const std::uint32_t m = cfg.candidates;
  World world(world_config_for(cfg, 2 * m, trial_seed));
  std::vector<std::uint64_t> candidates(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    candidates[i] = cfg.scheme == SchemeKind::Zerocoin ? cfg.denomination + i : 1 + i;
  }
  std::vector<std::uint64_t> values(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    // fixed-denomination schemes can only mint the denomination; everyone
    // else draws independently from the published candidate list
    values[i] = cfg.scheme == SchemeKind::Zerocoin ? cfg.denomination
                                                   : candidates[world.rng().uniform(m)];
  }
  const Lineages lin = run_lineages(world, cfg, values);
  const std::uint32_t c = static_cast<std::uint32_t>(world.rng().uniform(m));

  check_books(world);
  AdversaryView view;
  view.ledger = &world.ledger();
  Rng guess_rng(Rng::derive(trial_seed, kGuessSalt));
  const std::uint64_t guess =
      guess_value(cfg, view, lin.created[c], candidates, guess_rng, cfg.random_adversary);

  TrialOutput out;
  out.adversary_correct = (guess == lin.root_values[c]);
  if (want_line) {
    out.line = json{{"challenge", json{{"target", outpoint_json(lin.created[c])},
                                       {"candidate_values", candidates}}},
                    {"guess", guess},
                    {"truth", lin.root_values[c]},
                    {"correct", out.adversary_correct},
                    {"view_digest", hex_prefix(Sha256::of(view.to_json().dump()), 8)}};
  }
  return out;
}

TrialOutput trial_coin_to_time(const GameConfig& cfg, std::uint64_t trial_seed, bool want_line) {
  const std::uint32_t m = cfg.candidates;
  // owner, peer, third party, plus enough side coins to populate rings
  const std::uint32_t side = std::max<std::uint32_t>(cfg.ring_size, 2);
  World world(world_config_for(cfg, 3 + side, trial_seed));
  const std::uint64_t v = lineage_value(cfg);
  const OutPoint root = world.scheme().mint(world, 0, v);
  for (std::uint32_t i = 0; i < side; ++i) {
    world.scheme().mint(world, 3 + i, v);
  }
  world.advance_round();
  transfer(world, 0, 1, {root});
  world.advance_round();
  world.scheme().scan_and_receive(world, 1);
  const auto held = world.wallet(1).unspent_indices();
  const OutPoint coin = world.wallet(1).coins.at(held.front()).where;

  const std::uint32_t first_possible = world.round();
  std::vector<std::uint32_t> candidate_rounds(m);
  for (std::uint32_t i = 0; i < m; ++i) candidate_rounds[i] = first_possible + i;
  const std::uint32_t delay = static_cast<std::uint32_t>(world.rng().uniform(m));
  for (std::uint32_t i = 0; i < delay; ++i) world.advance_round();
  const std::uint64_t consuming_entry = transfer(world, 1, 2, {coin});
  const std::uint32_t truth_round = world.ledger().at(consuming_entry).round;

  check_books(world);
  AdversaryView view;
  view.ledger = &world.ledger();
  Rng guess_rng(Rng::derive(trial_seed, kGuessSalt));
  // confirmation times are part of the public record: reading the round off
  // the designated consuming entry is the whole attack
  const std::uint32_t guess =
      cfg.random_adversary
          ? candidate_rounds[guess_rng.uniform(candidate_rounds.size())]
          : world.ledger().at(consuming_entry).round;

  TrialOutput out;
  out.adversary_correct = (guess == truth_round);
  if (want_line) {
    out.line = json{{"challenge", json{{"consuming_entry", consuming_entry},
                                       {"candidate_rounds", candidate_rounds}}},
                    {"guess", guess},
                    {"truth", truth_round},
                    {"correct", out.adversary_correct},
                    {"view_digest", hex_prefix(Sha256::of(view.to_json().dump()), 8)}};
  }
  return out;
}

TrialOutput trial_tran_to_tran(const GameConfig& cfg, std::uint64_t trial_seed, bool want_line) {
  const std::uint32_t m = cfg.candidates;  // m nodes; one submits twice
  World world(world_config_for(cfg, m, trial_seed));
  const std::uint64_t v = lineage_value(cfg);
  const std::uint32_t star = static_cast<std::uint32_t>(world.rng().uniform(m));

  struct Slot {
    std::uint32_t node;
    OutPoint coin;
  };
  std::vector<Slot> slots;
  for (std::uint32_t i = 0; i < m; ++i) {
    slots.push_back(Slot{i, world.scheme().mint(world, i, v)});
  }
  slots.push_back(Slot{star, world.scheme().mint(world, star, v)});
  world.advance_round();
  world.rng().shuffle(slots);

  std::vector<std::uint64_t> entries;
  std::vector<std::uint64_t> star_entries;
  for (const auto& slot : slots) {
    const std::uint64_t e = transfer(world, slot.node, slot.node, {slot.coin});
    entries.push_back(e);
    if (slot.node == star) star_entries.push_back(e);
    world.advance_round();
  }

  const std::uint64_t designated = star_entries[world.rng().uniform(2)];
  const std::uint64_t other = designated == star_entries[0] ? star_entries[1] : star_entries[0];
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t e : entries) {
    if (e != designated) candidates.push_back(e);
  }

  check_books(world);
  AdversaryView view;
  view.ledger = &world.ledger();
  view.transport = &world.transport();
  Rng guess_rng(Rng::derive(trial_seed, kGuessSalt));

  std::uint64_t guess;
  if (cfg.random_adversary) {
    guess = candidates[guess_rng.uniform(candidates.size())];
  } else {
    // origin equality over the observation log
    std::optional<NodeAddress> origin;
    for (const auto& obs : world.transport()) {
      if (obs.payload_kind == PayloadKind::Transaction && obs.payload_ref == designated) {
        origin = obs.origin;
      }
    }
    std::vector<std::uint64_t> same_origin;
    if (origin) {
      for (const auto& obs : world.transport()) {
        if (obs.payload_kind != PayloadKind::Transaction || obs.payload_ref == designated) continue;
        if (!(obs.origin == *origin)) continue;
        if (std::find(candidates.begin(), candidates.end(), obs.payload_ref) != candidates.end()) {
          same_origin.push_back(obs.payload_ref);
        }
      }
    }
    guess = same_origin.empty() ? candidates[guess_rng.uniform(candidates.size())]
                                : same_origin[guess_rng.uniform(same_origin.size())];
  }

  TrialOutput out;
  out.adversary_correct = (guess == other);
  if (want_line) {
    out.line = json{{"challenge", json{{"designated", designated}, {"candidates", candidates}}},
                    {"guess", guess},
                    {"truth", other},
                    {"correct", out.adversary_correct},
                    {"view_digest", hex_prefix(Sha256::of(view.to_json().dump()), 8)}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// chosen-coin games (secret-sharing layer)
// ---------------------------------------------------------------------------

// Receiving role: the victim owns m ledger coins; the attacker is paid from
// one of them with parameters of its choosing, and must beat a ledger-only
// companion adversary at naming the funding coin, another coin's value, or
// the funding coin's acquisition round.
TrialOutput trial_rccla(const GameConfig& cfg, std::uint64_t trial_seed, bool want_line) {
  const std::uint32_t m = cfg.candidates;
  constexpr SubjectId kVictim = 0, kAttacker = 1;
  World world(world_config_for(cfg, 2, trial_seed));

  std::vector<std::uint64_t> candidate_values(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    candidate_values[i] =
        cfg.scheme == SchemeKind::Zerocoin ? cfg.denomination + i : 1 + i;
  }
  std::vector<OutPoint> roots(m);
  std::vector<std::uint64_t> root_values(m);
  std::vector<std::uint32_t> root_rounds(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    root_values[i] = cfg.scheme == SchemeKind::Zerocoin
                         ? cfg.denomination
                         : candidate_values[world.rng().uniform(m)];
    roots[i] = world.scheme().mint(world, kVictim, root_values[i]);
    root_rounds[i] = world.round();
    world.advance_round();
  }

  const std::uint32_t funding = static_cast<std::uint32_t>(world.rng().uniform(m));
  const std::uint64_t payment_entry = transfer(world, kVictim, kAttacker, {roots[funding]});
  world.advance_round();
  world.scheme().scan_and_receive(world, kAttacker);

  check_books(world);
  AdversaryView view;
  view.ledger = &world.ledger();
  view.own_wallets.push_back(&world.wallet(kAttacker));
  view.private_notes = json{{"role", "recipient"}, {"payment_entry", payment_entry}};

  // identical guess streams couple the two adversaries wherever their
  // strategies coincide, so the advantage estimate is paired
  Rng adv_rng(Rng::derive(trial_seed, kGuessSalt));
  Rng base_rng(Rng::derive(trial_seed, kGuessSalt));

  auto pick_funding = [&](Rng& rng, bool random_only) -> OutPoint {
    return guess_source_coin(cfg.scheme, view, OutPoint{payment_entry, 0}, roots, rng, random_only);
  };

  TrialOutput out;
  json guess_j, truth_j;
  switch (cfg.medium) {
    case Medium::SentCoin: {
      const OutPoint adv = pick_funding(adv_rng, cfg.random_adversary);
      const OutPoint base = pick_funding(base_rng, false);
      out.adversary_correct = (adv == roots[funding]);
      out.baseline_correct = (base == roots[funding]);
      guess_j = outpoint_json(adv);
      truth_j = outpoint_json(roots[funding]);
      break;
    }
    case Medium::CoinToValue: {
      // value of a designated coin the victim did NOT pay with
      std::uint32_t designated = static_cast<std::uint32_t>(world.rng().uniform(m - 1));
      if (designated >= funding) ++designated;
      auto pick_value = [&](Rng& rng, bool random_only) {
        if (!random_only && cfg.scheme == SchemeKind::Zerocoin) return cfg.denomination;
        return candidate_values[rng.uniform(m)];
      };
      const std::uint64_t adv = pick_value(adv_rng, cfg.random_adversary);
      const std::uint64_t base = pick_value(base_rng, false);
      out.adversary_correct = (adv == root_values[designated]);
      out.baseline_correct = (base == root_values[designated]);
      guess_j = adv;
      truth_j = root_values[designated];
      break;
    }
    case Medium::CoinToTime: {
      // acquisition round of the funding coin
      const OutPoint adv_pick = pick_funding(adv_rng, cfg.random_adversary);
      const OutPoint base_pick = pick_funding(base_rng, false);
      const std::uint32_t adv = world.ledger().at(adv_pick.entry).round;
      const std::uint32_t base = world.ledger().at(base_pick.entry).round;
      out.adversary_correct = (adv == root_rounds[funding]);
      out.baseline_correct = (base == root_rounds[funding]);
      guess_j = adv;
      truth_j = root_rounds[funding];
      break;
    }
    default:
      throw std::logic_error("unsupported medium for the receiving game");
  }
  if (want_line) {
    out.line = json{{"challenge", json{{"payment_entry", payment_entry}}},
                    {"guess", guess_j},
                    {"truth", truth_j},
                    {"correct", out.adversary_correct},
                    {"view_digest", hex_prefix(Sha256::of(view.to_json().dump()), 8)}};
  }
  return out;
}

// Sending role: the attacker pays the victim a coin with chosen parameters,
// the victim later forwards everything it holds (re-denominated, after
// geometric delays), one forward lands at a colluding recipient, and the
// attacker must beat the ledger-only companion at spotting its coin's
// consumption, the consumption round, or the forwarded value.
TrialOutput trial_sccla(const GameConfig& cfg, std::uint64_t trial_seed, bool want_line) {
  const std::uint32_t m = cfg.candidates;
  constexpr SubjectId kAttacker = 0, kVictim = 1, kColluder = 2;
  const SubjectId first_peer = 3;                 // m-1 donors, reused as receivers
  const SubjectId churn_a = first_peer + (m - 1);
  const SubjectId churn_b = churn_a + 1;
  World world(world_config_for(cfg, churn_b + 1, trial_seed));
  const auto denom_or = [&](std::uint64_t v) {
    return cfg.scheme == SchemeKind::Zerocoin ? cfg.denomination : v;
  };

  std::vector<std::uint64_t> candidate_values(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    candidate_values[i] =
        cfg.scheme == SchemeKind::Zerocoin ? cfg.denomination : 1 + i;
  }

  // side pool so rings never run dry
  std::vector<OutPoint> churn_coins;
  for (SubjectId ch : {churn_a, churn_b}) {
    churn_coins.push_back(world.scheme().mint(world, ch, denom_or(10)));
    churn_coins.push_back(world.scheme().mint(world, ch, denom_or(10)));
  }
  // the victim's other coins come from ordinary peers so the marked payment
  // is structurally indistinguishable from the rest
  std::vector<OutPoint> peer_coins;
  for (std::uint32_t i = 0; i + 1 < m; ++i) {
    peer_coins.push_back(world.scheme().mint(
        world, first_peer + i, denom_or(candidate_values[world.rng().uniform(m)])));
  }
  const std::uint64_t marked_value = denom_or(candidate_values[world.rng().uniform(m)]);
  const OutPoint attacker_coin = world.scheme().mint(world, kAttacker, marked_value);
  world.advance_round();

  struct Payment {
    SubjectId from;
    OutPoint coin;
  };
  std::vector<Payment> payments;
  for (std::uint32_t i = 0; i + 1 < m; ++i) payments.push_back({first_peer + i, peer_coins[i]});
  payments.push_back({kAttacker, attacker_coin});
  world.rng().shuffle(payments);

  std::uint64_t marked_entry = 0;
  json attacker_notes = json::object();
  for (const auto& p : payments) {
    PreparedTransfer pt =
        world.scheme().build_transfer(world, p.from, kVictim, {p.coin}, {});
    const std::uint64_t e = world.submit_prepared(pt);
    if (p.from == kAttacker) {
      marked_entry = e;
      // everything the attacker chose or saw while building the payment
      switch (cfg.scheme) {
        case SchemeKind::Zerocash: {
          const auto& sc = pt.shares.front().coins.front();
          attacker_notes = json{{"value", sc.value},
                                {"rho", hex(*sc.rho)},
                                {"commitment", hex(*sc.commitment)}};
          break;
        }
        case SchemeKind::CryptoNote: {
          attacker_notes = json{{"destination", *pt.tx.outputs.front().stealth_key},
                                {"tx_pubkey", *pt.tx.outputs.front().tx_pubkey}};
          break;
        }
        case SchemeKind::Mimblewimble: {
          attacker_notes = json{{"handed_token", *pt.tx.inputs.front().commitment}};
          break;
        }
        default:
          break;
      }
    }
    world.advance_round();
  }
  world.scheme().scan_and_receive(world, kVictim);

  // locate the victim's wallet coins and which of them is the marked one
  const OutPoint marked_coin{marked_entry, 0};
  std::vector<OutPoint> victim_coins;
  for (const auto& coin : world.wallet(kVictim).coins) {
    if (!coin.spent) victim_coins.push_back(coin.where);
  }
  if (victim_coins.size() != m) throw std::logic_error("victim wallet incomplete");
  world.rng().shuffle(victim_coins);

  // the colluder receives one of the unmarked forwards
  std::vector<std::size_t> unmarked_positions;
  for (std::size_t i = 0; i < victim_coins.size(); ++i) {
    if (!(victim_coins[i] == marked_coin)) unmarked_positions.push_back(i);
  }
  const std::size_t colluder_pos = unmarked_positions[world.rng().uniform(unmarked_positions.size())];

  std::vector<std::uint64_t> forwards;
  std::uint64_t colluder_entry = 0;
  std::uint64_t consumed_entry = 0;
  std::uint32_t consumed_round = 0;
  std::uint64_t forwarded_value = 0;
  std::uint32_t churn_turn = 0;
  for (std::size_t k = 0; k < victim_coins.size(); ++k) {
    const std::uint32_t gap = 1 + world.rng().geometric(0.5, 4);
    for (std::uint32_t g = 0; g < gap; ++g) {
      world.advance_round();
      // background traffic from the churners
      const SubjectId ch = (churn_turn++ % 2 == 0) ? churn_a : churn_b;
      world.scheme().scan_and_receive(world, ch);
      const auto idx = world.wallet(ch).unspent_indices();
      if (!idx.empty()) {
        transfer(world, ch, ch, {world.wallet(ch).coins[idx.front()].where});
      }
    }
    const OutPoint coin = victim_coins[k];
    const std::uint64_t coin_value = world.truth_of(coin).value;
    const std::uint64_t pay = cfg.scheme == SchemeKind::Zerocoin
                                  ? cfg.denomination
                                  : 1 + world.rng().uniform(coin_value);
    const SubjectId recipient =
        (k == colluder_pos) ? kColluder : first_peer + static_cast<SubjectId>(k % (m - 1));
    TransferParams params;
    params.pay_value = pay;
    const std::uint64_t e = transfer(world, kVictim, recipient, {coin}, params);
    forwards.push_back(e);
    if (k == colluder_pos) colluder_entry = e;
    if (coin == marked_coin) {
      consumed_entry = e;
      consumed_round = world.ledger().at(e).round;
      forwarded_value = pay;
    }
  }
  world.scheme().scan_and_receive(world, kColluder);

  // the colluder's own receipt is excluded from the question for both sides
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t e : forwards) {
    if (e != colluder_entry) candidates.push_back(e);
  }

  check_books(world);
  AdversaryView view;
  view.ledger = &world.ledger();
  view.own_wallets.push_back(&world.wallet(kAttacker));
  view.own_wallets.push_back(&world.wallet(kColluder));
  view.private_notes = json{{"role", "sender"}, {"marked", attacker_notes}};

  Rng adv_rng(Rng::derive(trial_seed, kGuessSalt));
  Rng base_rng(Rng::derive(trial_seed, kGuessSalt));

  auto pick_consuming = [&](Rng& rng, bool informed) -> std::uint64_t {
    if (informed) {
      switch (cfg.scheme) {
        case SchemeKind::Mimblewimble: {
          // the attacker recognizes the token it handed over, reads the
          // marked payment's output token, and watches for it on the input
          // side
          const GroupElt handed = attacker_notes.at("handed_token").get<GroupElt>();
          std::optional<GroupElt> marked_token;
          for (const auto& entry : view.ledger->entries()) {
            if (entry.tx.inputs.empty() || !entry.tx.inputs.front().commitment) continue;
            if (*entry.tx.inputs.front().commitment == handed) {
              marked_token = entry.tx.outputs.front().pedersen;
            }
          }
          if (marked_token) {
            for (std::uint64_t e : candidates) {
              for (const auto& in : view.ledger->at(e).tx.inputs) {
                if (in.commitment && *in.commitment == *marked_token) return e;
              }
            }
          }
          break;
        }
        case SchemeKind::CryptoNote: {
          // ring membership counter for the destination key it created
          const GroupElt dest = attacker_notes.at("destination").get<GroupElt>();
          std::optional<OutPoint> marked_out;
          for (const auto& entry : view.ledger->entries()) {
            for (std::uint32_t i = 0; i < entry.tx.outputs.size(); ++i) {
              const auto& o = entry.tx.outputs[i];
              if (o.stealth_key && *o.stealth_key == dest) marked_out = OutPoint{entry.index, i};
            }
          }
          if (marked_out) {
            std::vector<std::uint64_t> containing;
            for (std::uint64_t e : candidates) {
              for (const auto& in : view.ledger->at(e).tx.inputs) {
                if (std::find(in.ring.begin(), in.ring.end(), *marked_out) != in.ring.end()) {
                  containing.push_back(e);
                  break;
                }
              }
            }
            if (!containing.empty()) return containing[rng.uniform(containing.size())];
          }
          break;
        }
        default:
          break;  // nothing in the serial-number schemes points back
      }
    }
    return candidates[rng.uniform(candidates.size())];
  };

  TrialOutput out;
  json guess_j, truth_j;
  switch (cfg.medium) {
    case Medium::ConsumedCoin: {
      const std::uint64_t adv = pick_consuming(adv_rng, !cfg.random_adversary);
      const std::uint64_t base = pick_consuming(base_rng, false);
      out.adversary_correct = (adv == consumed_entry);
      out.baseline_correct = (base == consumed_entry);
      guess_j = adv;
      truth_j = consumed_entry;
      break;
    }
    case Medium::CoinToTime: {
      const std::uint64_t adv = pick_consuming(adv_rng, !cfg.random_adversary);
      const std::uint64_t base = pick_consuming(base_rng, false);
      out.adversary_correct = (world.ledger().at(adv).round == consumed_round);
      out.baseline_correct = (world.ledger().at(base).round == consumed_round);
      guess_j = world.ledger().at(adv).round;
      truth_j = consumed_round;
      break;
    }
    case Medium::CoinToValue: {
      auto pick_value = [&](Rng& rng, bool random_only) -> std::uint64_t {
        if (!random_only && cfg.scheme == SchemeKind::Zerocoin) return cfg.denomination;
        return candidate_values[rng.uniform(candidate_values.size())];
      };
      const std::uint64_t adv = pick_value(adv_rng, cfg.random_adversary);
      const std::uint64_t base = pick_value(base_rng, false);
      out.adversary_correct = (adv == forwarded_value);
      out.baseline_correct = (base == forwarded_value);
      guess_j = adv;
      truth_j = forwarded_value;
      break;
    }
    default:
      throw std::logic_error("unsupported medium for the sending game");
  }
  if (want_line) {
    out.line = json{{"challenge", json{{"candidates", candidates}}},
                    {"guess", guess_j},
                    {"truth", truth_j},
                    {"correct", out.adversary_correct},
                    {"view_digest", hex_prefix(Sha256::of(view.to_json().dump()), 8)}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// runner
// ---------------------------------------------------------------------------

using TrialFn = std::function<TrialOutput(std::uint64_t trial, std::uint64_t trial_seed, bool want_line)>;

AttackOutcome run_cell(const GameConfig& cfg, const TrialFn& fn, double analytic_baseline,
                       bool baseline_measured, std::vector<std::string>* transcript) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (cfg.candidates < 2) throw std::invalid_argument("candidates must be at least 2");
  if (cfg.ring_size < 1) throw std::invalid_argument("ring size must be at least 1");

  const std::uint64_t cseed = cell_seed(cfg);
  const bool want_lines = transcript != nullptr;
  std::vector<std::string> lines;
  if (want_lines) lines.resize(cfg.trials);

  std::uint32_t workers = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  if (workers == 0) workers = 1;
  workers = std::min<std::uint32_t>(workers, cfg.trials);

  std::vector<std::uint64_t> adv_counts(workers, 0), base_counts(workers, 0);
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&](std::uint32_t w) {
    try {
      for (std::uint64_t t = w; t < cfg.trials; t += workers) {
        const std::uint64_t trial_seed = Rng::derive(cseed, kTrialSalt + t);
        TrialOutput r = fn(t, trial_seed, want_lines);
        if (r.adversary_correct) ++adv_counts[w];
        if (r.baseline_correct) ++base_counts[w];
        if (want_lines) {
          r.line["trial"] = t;
          lines[t] = r.line.dump();
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::uint64_t adv_total = 0, base_total = 0;
  for (std::uint32_t w = 0; w < workers; ++w) {
    adv_total += adv_counts[w];
    base_total += base_counts[w];
  }

  double baseline = analytic_baseline;
  AttackOutcome o = estimate_advantage(adv_total, cfg.trials, baseline);
  if (baseline_measured) {
    o.baseline = static_cast<double>(base_total) / cfg.trials;
    o.baseline_ci = wilson_interval(base_total, cfg.trials);
    o.baseline_successes = base_total;
    o.baseline_measured = true;
    o.advantage = o.success_rate - o.baseline;
  }
  o.scheme = cfg.scheme;
  o.attack = cfg.attack;
  o.medium = cfg.medium;
  if (want_lines) *transcript = std::move(lines);
  return o;
}

void check_ring_pool(const GameConfig& cfg, std::uint32_t pool) {
  if (cfg.scheme == SchemeKind::CryptoNote && cfg.ring_size > pool) {
    throw std::invalid_argument("ring size " + std::to_string(cfg.ring_size) +
                                " exceeds the candidate pool of " + std::to_string(pool));
  }
}

}  // namespace

AttackOutcome run_slla(const GameConfig& cfg) { return run_game(cfg); }
AttackOutcome run_tlla(const GameConfig& cfg) { return run_game(cfg); }
AttackOutcome run_rccla(const GameConfig& cfg) { return run_game(cfg); }
AttackOutcome run_sccla(const GameConfig& cfg) { return run_game(cfg); }

AttackOutcome run_game(const GameConfig& cfg, std::vector<std::string>* transcript) {
  if (!attack_supports_medium(cfg.attack, cfg.medium)) {
    return AttackOutcome::not_applicable(
        cfg, std::string(medium_name(cfg.medium)) + " is not a medium of " +
                 std::string(attack_name(cfg.attack)));
  }
  if (!scheme_supports_attack(cfg.scheme, cfg.attack)) {
    return AttackOutcome::not_applicable(
        cfg, std::string(scheme_name(cfg.scheme)) + " has no secret-sharing layer");
  }
  if (is_mixing(cfg.scheme) && cfg.mix_size < 2) {
    throw std::invalid_argument("mix size must be at least 2");
  }

  const double analytic = 1.0 / cfg.candidates;
  switch (cfg.attack) {
    case Attack::Slla:
    case Attack::Tlla: {
      const bool with_transport = cfg.attack == Attack::Tlla;
      switch (cfg.medium) {
        case Medium::CoinToCoin:
          check_ring_pool(cfg, cfg.candidates);
          return run_cell(
              cfg,
              [&](std::uint64_t, std::uint64_t seed, bool line) {
                return trial_coin_to_coin(cfg, seed, with_transport, line);
              },
              analytic, false, transcript);
        case Medium::CoinToValue:
          check_ring_pool(cfg, cfg.candidates);
          return run_cell(
              cfg,
              [&](std::uint64_t, std::uint64_t seed, bool line) {
                return trial_coin_to_value(cfg, seed, line);
              },
              analytic, false, transcript);
        case Medium::CoinToTime:
          return run_cell(
              cfg,
              [&](std::uint64_t, std::uint64_t seed, bool line) {
                return trial_coin_to_time(cfg, seed, line);
              },
              analytic, false, transcript);
        case Medium::TranToTran:
          check_ring_pool(cfg, cfg.candidates + 1);
          return run_cell(
              cfg,
              [&](std::uint64_t, std::uint64_t seed, bool line) {
                return trial_tran_to_tran(cfg, seed, line);
              },
              analytic, false, transcript);
        default:
          break;
      }
      break;
    }
    case Attack::Rccla:
      check_ring_pool(cfg, cfg.candidates);
      return run_cell(
          cfg,
          [&](std::uint64_t, std::uint64_t seed, bool line) {
            return trial_rccla(cfg, seed, line);
          },
          analytic, true, transcript);
    case Attack::Sccla:
      return run_cell(
          cfg,
          [&](std::uint64_t, std::uint64_t seed, bool line) {
            return trial_sccla(cfg, seed, line);
          },
          1.0 / (cfg.candidates - 1), true, transcript);
  }
  throw std::logic_error("unreachable game dispatch");
}

}  // namespace anonylink

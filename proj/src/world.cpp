#include "anonylink/world.hpp"

#include <algorithm>

#include "anonylink/schemes.hpp"

namespace anonylink {

std::string_view scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::Bitcoin: return "bitcoin";
    case SchemeKind::CoinJoin: return "coinjoin";
    case SchemeKind::Coinshuffle: return "coinshuffle";
    case SchemeKind::Zerocoin: return "zerocoin";
    case SchemeKind::Zerocash: return "zerocash";
    case SchemeKind::CryptoNote: return "cryptonote";
    case SchemeKind::Mimblewimble: return "mimblewimble";
  }
  return "?";
}

SchemeKind scheme_from_name(std::string_view name) {
  for (SchemeKind k : all_schemes()) {
    if (scheme_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

const std::vector<SchemeKind>& all_schemes() {
  static const std::vector<SchemeKind> k = {
      SchemeKind::Bitcoin,    SchemeKind::CoinJoin,   SchemeKind::Coinshuffle,
      SchemeKind::Zerocoin,   SchemeKind::Zerocash,   SchemeKind::CryptoNote,
      SchemeKind::Mimblewimble};
  return k;
}

std::string_view reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::DoubleSpend: return "double_spend";
    case RejectReason::Unbalanced: return "unbalanced";
    case RejectReason::DuplicateCommitment: return "duplicate_commitment";
    case RejectReason::Malformed: return "malformed";
  }
  return "?";
}

Digest32 Transaction::public_digest() const {
  KeyedHash h("tx-public");
  h.feed_u64(static_cast<std::uint64_t>(scheme));
  h.feed_u64(static_cast<std::uint64_t>(kind));
  h.feed_u64(inputs.size());
  for (const auto& in : inputs) {
    h.feed_u64(in.spends ? 1 : 0);
    if (in.spends) h.feed_u64(in.spends->entry).feed_u64(in.spends->output);
    h.feed_u64(in.ring.size());
    for (const auto& r : in.ring) h.feed_u64(r.entry).feed_u64(r.output);
    h.feed_u64(in.key_image ? 1 : 0);
    if (in.key_image) h.feed(*in.key_image);
    h.feed_u64(in.serial ? 1 : 0);
    if (in.serial) h.feed(*in.serial);
    h.feed_u64(in.commitment ? 1 : 0);
    if (in.commitment) h.feed_u64(*in.commitment);
  }
  h.feed_u64(outputs.size());
  for (const auto& out : outputs) {
    h.feed_u64(out.address ? 1 : 0);
    if (out.address) h.feed(*out.address);
    h.feed_u64(out.value ? 1 : 0);
    if (out.value) h.feed_u64(*out.value);
    h.feed_u64(out.commitment ? 1 : 0);
    if (out.commitment) h.feed(*out.commitment);
    h.feed_u64(out.stealth_key ? 1 : 0);
    if (out.stealth_key) h.feed_u64(*out.stealth_key);
    h.feed_u64(out.tx_pubkey ? 1 : 0);
    if (out.tx_pubkey) h.feed_u64(*out.tx_pubkey);
    h.feed_u64(out.pedersen ? 1 : 0);
    if (out.pedersen) h.feed_u64(*out.pedersen);
  }
  h.feed_u64(kernel_excess ? 1 : 0);
  if (kernel_excess) h.feed_u64(*kernel_excess);
  return h.digest();
}

std::uint64_t SharedLedger::append(std::uint32_t round, Transaction tx) {
  const std::uint64_t idx = entries_.size();
  entries_.push_back(LedgerEntry{round, idx, std::move(tx)});
  return idx;
}

Digest32 SharedLedger::prefix_digest(std::size_t k) const {
  KeyedHash h("ledger-prefix");
  h.feed_u64(k);
  for (std::size_t i = 0; i < k && i < entries_.size(); ++i) {
    h.feed_u64(entries_[i].round);
    h.feed(entries_[i].tx.public_digest());
  }
  return h.digest();
}

std::vector<std::size_t> WalletStore::unspent_indices() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < coins.size(); ++i) {
    if (!coins[i].spent) idx.push_back(i);
  }
  return idx;
}

World::World(const WorldConfig& config)
    : cfg_(config),
      grp_(GroupParams::get(config.group)),
      rng_(Rng::derive(config.seed, 0x776f726c64ULL)),
      faucet_addr_{0, 1} {
  scheme_ = make_scheme(cfg_.scheme);
  mixnet_ = cfg_.mixnet;
  const std::uint32_t minimum = scheme_->min_subjects(cfg_);
  if (cfg_.subjects < minimum) {
    throw std::invalid_argument("scheme " + std::string(scheme_->name()) + " needs at least " +
                                std::to_string(minimum) + " subjects (got " +
                                std::to_string(cfg_.subjects) + ")");
  }
  subjects_.reserve(cfg_.subjects);
  wallets_.resize(cfg_.subjects);
  for (SubjectId id = 0; id < cfg_.subjects; ++id) {
    Subject s;
    s.id = id;
    s.addr = NodeAddress{1 + static_cast<std::uint32_t>(rng_.uniform(4)), 0x1000 + id};
    subjects_.push_back(std::move(s));
    wallets_[id].owner = id;
  }
  for (SubjectId id = 0; id < cfg_.subjects; ++id) {
    scheme_->keygen(*this, id);
  }
}

World::~World() = default;

NodeAddress World::observed_origin(const NodeAddress& real) {
  if (!mixnet_) return real;
  // ideal anonymizer: a fresh pseudonymous origin per message
  return NodeAddress{0x4d490000u + static_cast<std::uint32_t>(rng_.uniform(0x10000)),
                     static_cast<std::uint32_t>(rng_.uniform(0xffffffffULL))};
}

void World::record_observation(const NodeAddress& origin, PayloadKind kind, std::uint64_t ref) {
  transport_.push_back(
      TransportObservation{round_, observed_origin(origin), kind, ref, payload_visibility()});
}

PayloadVisibility World::payload_visibility() const {
  switch (cfg_.scheme) {
    case SchemeKind::Bitcoin:
    case SchemeKind::CoinJoin:
    case SchemeKind::Coinshuffle:
    case SchemeKind::Zerocoin:
      return PayloadVisibility::Cleartext;
    default:
      return PayloadVisibility::Opaque;
  }
}

std::uint64_t World::submit(SubjectId submitter, const Transaction& tx) {
  if (submitter >= subjects_.size()) throw std::invalid_argument("unknown submitter");
  return append_validated(subjects_.at(submitter).addr, tx);
}

std::uint64_t World::append_from_faucet(const Transaction& tx) {
  return append_validated(faucet_addr_, tx);
}

std::uint64_t World::append_validated(const NodeAddress& origin, const Transaction& tx) {
  const ValidationResult v = scheme_->validate(*this, tx);
  if (!v.accepted) {
    throw ValidationError(*v.reason, v.detail);
  }
  const std::uint64_t idx = ledger_.append(round_, tx);
  record_observation(origin, PayloadKind::Transaction, idx);
  // one-shot identifiers become unusable once they hit the ledger
  for (const auto& in : tx.inputs) {
    if (in.serial) note_serial(*in.serial);
    if (in.key_image) note_key_image(*in.key_image);
  }
  for (const auto& out : tx.outputs) {
    if (out.commitment) note_commitment(*out.commitment);
  }
  return idx;
}

void World::send_secret_share(SubjectId from, SubjectId to, SecretShare share) {
  if (from >= subjects_.size() || to >= subjects_.size()) {
    throw std::invalid_argument("unknown subject in secret share");
  }
  share.seq = next_share_seq();
  share.from = from;
  share.to = to;
  share.round = round_;
  record_observation(subjects_.at(from).addr, PayloadKind::Share, share.seq);
  wallets_.at(to).received_shares.push_back(std::move(share));
}

void World::deliver_shares(const PreparedTransfer& pt) {
  for (const auto& sh : pt.shares) {
    send_secret_share(sh.from, sh.to, sh);
  }
}

std::uint64_t World::submit_prepared(const PreparedTransfer& pt) {
  deliver_shares(pt);
  const std::uint64_t idx = submit(pt.submitter, pt.tx);
  for (const auto& op : pt.consumes) {
    mark_consumed(op);
  }
  for (std::size_t i = 0; i < pt.pending.size(); ++i) {
    const auto& po = pt.pending[i];
    const OutPoint op{idx, static_cast<std::uint32_t>(i)};
    record_output_truth(op, TruthRecord{po.owner, po.value, round_, std::nullopt, po.parent,
                                        pt.submitter});
    if (!po.deliver_by_share) {
      SecretShare stash;
      stash.scheme = cfg_.scheme;
      stash.from = po.owner;
      stash.to = po.owner;
      stash.round = round_;
      stash.coins.push_back(po.secrets);
      wallets_.at(po.owner).self_stash.push_back(std::move(stash));
    }
  }
  return idx;
}

void World::record_output_truth(const OutPoint& op, TruthRecord rec) {
  if (cfg_.scheme == SchemeKind::Mimblewimble) {
    const auto& out = ledger_.output_at(op);
    if (out.pedersen) live_tokens_[*out.pedersen] = op;
  }
  const LedgerEntry& entry = ledger_.at(op.entry);
  if (entry.tx.kind == TxKind::Mint) total_minted_ += rec.value;
  truth_[op] = std::move(rec);
}

void World::mark_consumed(const OutPoint& op) {
  auto it = truth_.find(op);
  if (it == truth_.end()) throw std::logic_error("consuming unknown output");
  it->second.consumed_round = round_;
  if (cfg_.scheme == SchemeKind::Mimblewimble) {
    const auto& out = ledger_.output_at(op);
    if (out.pedersen) live_tokens_.erase(*out.pedersen);
  }
  for (auto& coin : wallets_.at(it->second.owner).coins) {
    if (coin.where == op) coin.spent = true;
  }
}

std::optional<OutPoint> World::live_token(GroupElt pedersen) const {
  auto it = live_tokens_.find(pedersen);
  if (it == live_tokens_.end()) return std::nullopt;
  return it->second;
}

std::vector<OutPoint> World::unspent_outputs() const {
  std::vector<OutPoint> out;
  for (const auto& [op, rec] : truth_) {
    if (!rec.consumed_round) out.push_back(op);
  }
  return out;
}

bool World::conservation_holds() const {
  std::uint64_t unconsumed = 0;
  for (const auto& [op, rec] : truth_) {
    if (!rec.consumed_round) unconsumed += rec.value;
  }
  return unconsumed == total_minted_;
}

json to_json(const OutPoint& op) { return json::array({op.entry, op.output}); }

json to_json(const NodeAddress& a) { return json{{"segment", a.segment}, {"host", a.host}}; }

json to_json(const Transaction& tx) {
  json inputs = json::array();
  for (const auto& in : tx.inputs) {
    json j = json::object();
    if (in.spends) j["spends"] = to_json(*in.spends);
    if (!in.ring.empty()) {
      json ring = json::array();
      for (const auto& r : in.ring) ring.push_back(to_json(r));
      j["ring"] = std::move(ring);
    }
    if (in.key_image) j["key_image"] = hex(*in.key_image);
    if (in.serial) j["serial"] = hex(*in.serial);
    if (in.commitment) j["commitment"] = *in.commitment;
    inputs.push_back(std::move(j));
  }
  json outputs = json::array();
  for (const auto& out : tx.outputs) {
    json j = json::object();
    if (out.address) j["address"] = hex(*out.address);
    if (out.value) j["value"] = *out.value;
    if (out.commitment) j["commitment"] = hex(*out.commitment);
    if (out.stealth_key) j["stealth_key"] = *out.stealth_key;
    if (out.tx_pubkey) j["tx_pubkey"] = *out.tx_pubkey;
    if (out.pedersen) j["pedersen"] = *out.pedersen;
    outputs.push_back(std::move(j));
  }
  json proofs = json::array();
  for (const auto& p : tx.proofs) {
    proofs.push_back(json{{"label", p.label}, {"statement", hex(p.statement)}, {"verified", p.verified}});
  }
  const char* kind = tx.kind == TxKind::Mint ? "mint" : (tx.kind == TxKind::Mix ? "mix" : "transfer");
  json j{{"scheme", std::string(scheme_name(tx.scheme))},
         {"kind", kind},
         {"inputs", std::move(inputs)},
         {"outputs", std::move(outputs)},
         {"proofs", std::move(proofs)}};
  if (tx.kernel_excess) j["kernel_excess"] = *tx.kernel_excess;
  return j;
}

json to_json(const LedgerEntry& e) {
  return json{{"round", e.round}, {"index", e.index}, {"tx", to_json(e.tx)}};
}

json to_json(const TransportObservation& o) {
  return json{{"round", o.round},
              {"origin", to_json(o.origin)},
              {"payload_kind", o.payload_kind == PayloadKind::Transaction ? "tx" : "share"},
              {"payload_ref", o.payload_ref},
              {"visibility", o.visibility == PayloadVisibility::Cleartext ? "cleartext" : "opaque"}};
}

json World::trace_json() const {
  json ledger = json::array();
  for (const auto& e : ledger_.entries()) ledger.push_back(to_json(e));
  json transport = json::array();
  for (const auto& o : transport_) transport.push_back(to_json(o));
  json truth = json::object();
  for (const auto& [op, rec] : truth_) {
    json r{{"owner", rec.owner},
           {"value", rec.value},
           {"created_round", rec.created_round},
           {"created_by", rec.created_by}};
    if (rec.consumed_round) r["consumed_round"] = *rec.consumed_round;
    if (rec.parent) r["parent"] = to_json(*rec.parent);
    truth[std::to_string(op.entry) + ":" + std::to_string(op.output)] = std::move(r);
  }
  return json{{"scheme", std::string(scheme_name(cfg_.scheme))},
              {"rng_seed", cfg_.seed},
              {"round", round_},
              {"ledger", std::move(ledger)},
              {"transport", std::move(transport)},
              {"ground_truth", std::move(truth)}};
}

}  // namespace anonylink

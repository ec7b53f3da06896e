#include <algorithm>

#include "schemes_impl.hpp"

namespace anonylink::detail {

namespace {

Scalar hash_to_scalar(const GroupParams& grp, GroupElt shared_point) {
  return grp.scalar_from_digest(KeyedHash("stealth-shared").feed_u64(shared_point).digest());
}

}  // namespace

std::uint32_t CryptoNoteScheme::min_subjects(const WorldConfig& cfg) const {
  // each subject is expected to contribute at least one output, so rings of
  // size n cannot be populated with fewer than n subjects
  return std::max<std::uint32_t>(2, cfg.ring_size);
}

void CryptoNoteScheme::keygen(World& world, SubjectId subject) {
  auto& s = world.subject(subject);
  const auto& grp = world.group();
  s.view_sk = grp.random_scalar(world.rng());
  s.spend_sk = grp.random_scalar(world.rng());
  s.view_pk = grp.pow(grp.g, *s.view_sk);
  s.spend_pk = grp.pow(grp.g, *s.spend_sk);
}

CryptoNoteScheme::StealthOutput CryptoNoteScheme::derive_stealth(
    World& world, const Subject& recipient, const std::optional<Scalar>& forced_nonce) {
  const auto& grp = world.group();
  const Scalar nonce = forced_nonce.value_or(grp.random_scalar(world.rng()));
  const GroupElt tx_pubkey = grp.pow(grp.g, nonce);
  const Scalar hs = hash_to_scalar(grp, grp.pow(*recipient.view_pk, nonce));
  const GroupElt destination = grp.mul(grp.pow(grp.g, hs), *recipient.spend_pk);
  return StealthOutput{destination, tx_pubkey, grp.add_q(hs, *recipient.spend_sk)};
}

Digest32 CryptoNoteScheme::key_image(const GroupParams&, Scalar onetime_secret,
                                     GroupElt destination) {
  // deterministic per output: same destination key, same tag
  return KeyedHash("key-image").key_u64(onetime_secret).feed_u64(destination).digest();
}

OutPoint CryptoNoteScheme::mint(World& world, SubjectId owner, std::uint64_t value) {
  if (value == 0) throw std::invalid_argument("mint value must be positive");
  const auto& grp = world.group();
  const auto& subj = world.subject(owner);
  const StealthOutput so = derive_stealth(world, subj);
  const Scalar blinding = grp.random_scalar(world.rng());
  Transaction tx{kind(), TxKind::Mint, {}, {}, {}};
  TxOutput out;
  out.stealth_key = so.destination;
  out.tx_pubkey = so.tx_pubkey;
  out.pedersen = grp.pedersen(blinding, value);
  tx.outputs.push_back(out);
  tx.proofs.push_back(issue_token(world, tx, "mint"));
  const std::uint64_t idx = world.append_from_faucet(tx);
  const OutPoint op{idx, 0};
  world.record_output_truth(op, TruthRecord{owner, value, world.round(), std::nullopt,
                                            std::nullopt, owner});
  WalletCoin coin;
  coin.where = op;
  coin.value = value;
  coin.onetime_secret = so.onetime_secret;
  coin.stealth_key = so.destination;
  coin.blinding = blinding;
  coin.pedersen = out.pedersen;
  world.wallet(owner).coins.push_back(coin);
  return op;
}

PreparedTransfer CryptoNoteScheme::build_transfer(World& world, SubjectId from, SubjectId to,
                                                  const std::vector<OutPoint>& coins,
                                                  const TransferParams& params) {
  if (coins.empty()) throw std::invalid_argument("no input coins");
  const auto& grp = world.group();
  const std::uint32_t ring_size = world.config().ring_size;
  std::uint64_t total = 0;
  std::vector<const WalletCoin*> spent;
  for (const auto& op : coins) {
    const WalletCoin& c = owned_unspent_coin(world, from, op);
    total += c.value;
    spent.push_back(&c);
  }
  const std::uint64_t pay = params.pay_value.value_or(total);
  if (pay == 0 || pay > total) throw std::invalid_argument("insufficient funds");

  PreparedTransfer pt;
  pt.tx = Transaction{kind(), TxKind::Transfer, {}, {}, {}};
  for (const auto* c : spent) {
    // decoys: uniform over prior unconsumed outputs, excluding the real one
    std::vector<OutPoint> pool;
    for (const auto& op : world.unspent_outputs()) {
      if (op == c->where) continue;
      if (world.ledger().output_at(op).stealth_key) pool.push_back(op);
    }
    if (pool.size() + 1 < ring_size) {
      throw std::invalid_argument("not enough outputs to populate the ring");
    }
    std::vector<OutPoint> ring{c->where};
    for (std::uint32_t k = 1; k < ring_size; ++k) {
      const std::size_t pick = world.rng().uniform(pool.size());
      ring.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    world.rng().shuffle(ring);  // the real member's position is uniform
    TxInput in;
    in.ring = std::move(ring);
    in.key_image = key_image(grp, *c->onetime_secret, *c->stealth_key);
    pt.tx.inputs.push_back(in);
    pt.consumes.push_back(c->where);
  }

  auto add_output = [&](SubjectId owner, std::uint64_t value, bool by_share) {
    const StealthOutput so = derive_stealth(world, world.subject(owner),
                                            by_share ? params.forced_nonce : std::nullopt);
    const Scalar blinding = grp.random_scalar(world.rng());
    TxOutput out;
    out.stealth_key = so.destination;
    out.tx_pubkey = so.tx_pubkey;
    out.pedersen = grp.pedersen(blinding, value);
    pt.tx.outputs.push_back(out);
    ShareCoin sc;
    sc.value = value;
    sc.blinding = blinding;
    sc.stealth_key = so.destination;
    sc.pedersen = out.pedersen;
    pt.pending.push_back(PendingOutput{owner, value, coins.front(), sc, by_share});
    return sc;
  };
  const ShareCoin pay_coin = add_output(to, pay, true);
  SecretShare share;
  share.scheme = kind();
  share.from = from;
  share.to = to;
  share.coins.push_back(pay_coin);
  pt.shares.push_back(share);
  if (pay < total) add_output(from, total - pay, false);

  // ring membership, key-image correctness and amount balance checked by the
  // challenger against the witness
  pt.tx.proofs.push_back(issue_token(world, pt.tx, "ring"));
  pt.submitter = from;
  return pt;
}

std::vector<OutPoint> CryptoNoteScheme::scan_and_receive(World& world, SubjectId recipient) {
  const auto& grp = world.group();
  auto& subj = world.subject(recipient);
  auto& wallet = world.wallet(recipient);
  std::vector<OutPoint> found;
  auto find_amount = [&](GroupElt destination) -> const ShareCoin* {
    for (const auto& share : wallet.received_shares) {
      for (const auto& sc : share.coins) {
        if (sc.stealth_key && *sc.stealth_key == destination) return &sc;
      }
    }
    for (const auto& share : wallet.self_stash) {
      for (const auto& sc : share.coins) {
        if (sc.stealth_key && *sc.stealth_key == destination) return &sc;
      }
    }
    return nullptr;
  };
  for (const auto& entry : world.ledger().entries()) {
    for (std::uint32_t i = 0; i < entry.tx.outputs.size(); ++i) {
      const auto& out = entry.tx.outputs[i];
      if (!out.stealth_key || !out.tx_pubkey) continue;
      const Scalar hs = hash_to_scalar(grp, grp.pow(*out.tx_pubkey, *subj.view_sk));
      if (grp.mul(grp.pow(grp.g, hs), *subj.spend_pk) != *out.stealth_key) continue;
      const OutPoint op{entry.index, i};
      bool known = false;
      for (const auto& coin : wallet.coins) {
        if (coin.where == op) {
          known = true;
          break;
        }
      }
      if (known || world.truth_of(op).consumed_round) continue;
      const ShareCoin* sc = find_amount(*out.stealth_key);
      if (sc == nullptr) continue;  // no amount opening delivered
      WalletCoin coin;
      coin.where = op;
      coin.value = sc->value;
      coin.onetime_secret = grp.add_q(hs, *subj.spend_sk);
      coin.stealth_key = *out.stealth_key;
      coin.blinding = sc->blinding;
      coin.pedersen = out.pedersen;
      wallet.coins.push_back(coin);
      found.push_back(op);
    }
  }
  return found;
}

ValidationResult CryptoNoteScheme::validate(const World& world, const Transaction& tx) const {
  if (tx.scheme != kind()) {
    return ValidationResult::fail(RejectReason::Malformed, "wrong scheme tag");
  }
  std::set<Digest32> in_tx;
  for (const auto& in : tx.inputs) {
    if (in.ring.empty() || !in.key_image) {
      return ValidationResult::fail(RejectReason::Malformed, "input needs ring and key image");
    }
    if (in.ring.size() != world.config().ring_size) {
      return ValidationResult::fail(RejectReason::Malformed, "wrong ring size");
    }
    std::set<OutPoint> members;
    for (const auto& member : in.ring) {
      if (member.entry >= world.ledger().size()) {
        return ValidationResult::fail(RejectReason::Malformed, "ring member does not exist");
      }
      const auto& src = world.ledger().at(member.entry).tx;
      if (member.output >= src.outputs.size() || !src.outputs[member.output].stealth_key) {
        return ValidationResult::fail(RejectReason::Malformed, "ring member is not an output");
      }
      if (!members.insert(member).second) {
        return ValidationResult::fail(RejectReason::Malformed, "ring member repeated");
      }
    }
    if (!in_tx.insert(*in.key_image).second) {
      return ValidationResult::fail(RejectReason::DoubleSpend, "key image repeated in transaction");
    }
    if (world.key_image_seen(*in.key_image)) {
      return ValidationResult::fail(RejectReason::DoubleSpend, "key image already on ledger");
    }
  }
  for (const auto& out : tx.outputs) {
    if (!out.stealth_key || !out.tx_pubkey || !out.pedersen) {
      return ValidationResult::fail(RejectReason::Malformed,
                                    "output needs destination, tx key and amount commitment");
    }
  }
  if (tx.kind != TxKind::Mint && tx.inputs.empty()) {
    return ValidationResult::fail(RejectReason::Malformed, "transfer without inputs");
  }
  return check_tokens(world, tx);
}

}  // namespace anonylink::detail

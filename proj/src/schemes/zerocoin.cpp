#include "schemes_impl.hpp"

namespace anonylink::detail {

namespace {

Digest32 zerocoin_commitment(const Digest32& randomness, const Digest32& serial) {
  const Digest32 payload[] = {serial};
  return commit("fixed-denom-mint", randomness, payload);
}

}  // namespace

OutPoint ZerocoinScheme::mint(World& world, SubjectId owner, std::uint64_t value) {
  if (value != world.config().denomination) {
    throw std::invalid_argument("mint value must equal the fixed denomination " +
                                std::to_string(world.config().denomination));
  }
  const Digest32 serial = random_digest(world.rng());
  const Digest32 randomness = random_digest(world.rng());
  Transaction tx{kind(), TxKind::Mint, {}, {}, {}};
  TxOutput out;
  out.commitment = zerocoin_commitment(randomness, serial);
  tx.outputs.push_back(out);
  tx.proofs.push_back(issue_token(world, tx, "mint"));
  const std::uint64_t idx = world.append_from_faucet(tx);
  const OutPoint op{idx, 0};
  world.record_output_truth(op, TruthRecord{owner, value, world.round(), std::nullopt,
                                            std::nullopt, owner});
  WalletCoin coin;
  coin.where = op;
  coin.value = value;
  coin.serial = serial;
  coin.comm_r = randomness;
  coin.commitment = out.commitment;
  world.wallet(owner).coins.push_back(coin);
  return op;
}

PreparedTransfer ZerocoinScheme::build_transfer(World& world, SubjectId from, SubjectId to,
                                                const std::vector<OutPoint>& coins,
                                                const TransferParams& params) {
  if (coins.empty()) throw std::invalid_argument("no input coins");
  const std::uint64_t denom = world.config().denomination;
  if (params.pay_value && *params.pay_value != denom * coins.size()) {
    throw std::invalid_argument("fixed-denomination transfer cannot split value");
  }
  PreparedTransfer pt;
  pt.tx = Transaction{kind(), TxKind::Transfer, {}, {}, {}};
  for (const auto& op : coins) {
    const WalletCoin& c = owned_unspent_coin(world, from, op);
    TxInput in;
    in.serial = c.serial;  // spend reveals the serial, never the mint commitment
    pt.tx.inputs.push_back(in);
    pt.consumes.push_back(op);
  }
  // one fresh coin per consumed coin, remint secrets drawn by the recipient
  for (const auto& op : coins) {
    const Digest32 serial = random_digest(world.rng());
    const Digest32 randomness = random_digest(world.rng());
    TxOutput out;
    out.commitment = zerocoin_commitment(randomness, serial);
    pt.tx.outputs.push_back(out);
    ShareCoin secrets;
    secrets.value = denom;
    secrets.rho = serial;  // the recipient's own serial seed
    secrets.comm_r = randomness;
    secrets.commitment = out.commitment;
    pt.pending.push_back(PendingOutput{to, denom, op, secrets, false});
  }
  // the network share is the payment notification: denomination and count
  SecretShare share;
  share.scheme = kind();
  share.from = from;
  share.to = to;
  ShareCoin note;
  note.value = denom * coins.size();
  share.coins.push_back(note);
  pt.shares.push_back(share);

  // accumulator membership and spend well-formedness, checked by the
  // challenger against the witness
  pt.tx.proofs.push_back(issue_token(world, pt.tx, "accumulator"));
  pt.submitter = from;
  return pt;
}

std::vector<OutPoint> ZerocoinScheme::scan_and_receive(World& world, SubjectId recipient) {
  auto& wallet = world.wallet(recipient);
  std::vector<OutPoint> found;
  for (const auto& share : wallet.self_stash) {
    for (const auto& sc : share.coins) {
      if (!sc.commitment || !sc.rho || !sc.comm_r) continue;
      for (const auto& entry : world.ledger().entries()) {
        for (std::uint32_t i = 0; i < entry.tx.outputs.size(); ++i) {
          const auto& out = entry.tx.outputs[i];
          if (!out.commitment || *out.commitment != *sc.commitment) continue;
          const OutPoint op{entry.index, i};
          bool known = false;
          for (const auto& coin : wallet.coins) {
            if (coin.where == op) {
              known = true;
              break;
            }
          }
          if (known || world.truth_of(op).consumed_round) continue;
          WalletCoin coin;
          coin.where = op;
          coin.value = sc.value;
          coin.serial = sc.rho;
          coin.comm_r = sc.comm_r;
          coin.commitment = sc.commitment;
          wallet.coins.push_back(coin);
          found.push_back(op);
        }
      }
    }
  }
  return found;
}

ValidationResult ZerocoinScheme::validate(const World& world, const Transaction& tx) const {
  if (tx.scheme != kind()) {
    return ValidationResult::fail(RejectReason::Malformed, "wrong scheme tag");
  }
  std::set<Digest32> in_tx;
  for (const auto& in : tx.inputs) {
    if (!in.serial) {
      return ValidationResult::fail(RejectReason::Malformed, "input without serial number");
    }
    if (!in_tx.insert(*in.serial).second) {
      return ValidationResult::fail(RejectReason::DoubleSpend, "serial repeated in transaction");
    }
    if (world.serial_seen(*in.serial)) {
      return ValidationResult::fail(RejectReason::DoubleSpend, "serial already on ledger");
    }
  }
  std::set<Digest32> out_tx;
  for (const auto& out : tx.outputs) {
    if (!out.commitment) {
      return ValidationResult::fail(RejectReason::Malformed, "output without commitment");
    }
    if (!out_tx.insert(*out.commitment).second || world.commitment_seen(*out.commitment)) {
      return ValidationResult::fail(RejectReason::DuplicateCommitment,
                                    "commitment already accumulated");
    }
  }
  if (tx.kind == TxKind::Transfer && tx.inputs.size() != tx.outputs.size()) {
    return ValidationResult::fail(RejectReason::Unbalanced,
                                  "fixed denomination: spends and remints must pair up");
  }
  if (tx.kind != TxKind::Mint && tx.inputs.empty()) {
    return ValidationResult::fail(RejectReason::Malformed, "transfer without inputs");
  }
  return check_tokens(world, tx);
}

}  // namespace anonylink::detail

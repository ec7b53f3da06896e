#include "schemes_impl.hpp"

namespace anonylink::detail {

namespace {

Digest32 fresh_address(World& world) {
  return KeyedHash("pseudonym").feed(random_digest(world.rng())).digest();
}

}  // namespace

void TransparentScheme::keygen(World& world, SubjectId subject) {
  // addresses[0] is the spending pseudonym, addresses[1] the receiving one;
  // both stay fixed for the run (address reuse is the point).
  auto& s = world.subject(subject);
  s.addresses.push_back(fresh_address(world));
  s.addresses.push_back(fresh_address(world));
}

OutPoint TransparentScheme::mint(World& world, SubjectId owner, std::uint64_t value) {
  if (value == 0) throw std::invalid_argument("mint value must be positive");
  Transaction tx{kind(), TxKind::Mint, {}, {}, {}};
  TxOutput out;
  out.address = world.subject(owner).addresses.at(0);
  out.value = value;
  tx.outputs.push_back(out);
  tx.proofs.push_back(issue_token(world, tx, "sig"));
  const std::uint64_t idx = world.append_from_faucet(tx);
  const OutPoint op{idx, 0};
  world.record_output_truth(op, TruthRecord{owner, value, world.round(), std::nullopt,
                                            std::nullopt, owner});
  WalletCoin coin;
  coin.where = op;
  coin.value = value;
  coin.address = out.address;
  world.wallet(owner).coins.push_back(coin);
  return op;
}

PreparedTransfer TransparentScheme::build_transfer(World& world, SubjectId from, SubjectId to,
                                                   const std::vector<OutPoint>& coins,
                                                   const TransferParams& params) {
  if (coins.empty()) throw std::invalid_argument("no input coins");
  std::uint64_t total = 0;
  for (const auto& op : coins) total += owned_unspent_coin(world, from, op).value;
  const std::uint64_t pay = params.pay_value.value_or(total);
  if (pay == 0 || pay > total) throw std::invalid_argument("insufficient funds");

  PreparedTransfer pt;
  pt.tx = Transaction{kind(), TxKind::Transfer, {}, {}, {}};
  for (const auto& op : coins) {
    TxInput in;
    in.spends = op;
    pt.tx.inputs.push_back(in);
    pt.consumes.push_back(op);
  }
  const Digest32 pay_addr =
      params.recipient_address_override.value_or(world.subject(to).addresses.at(1));
  TxOutput pay_out;
  pay_out.address = pay_addr;
  pay_out.value = pay;
  pt.tx.outputs.push_back(pay_out);
  pt.pending.push_back(PendingOutput{to, pay, coins.front(), {}, false});
  if (pay < total) {
    TxOutput change;
    change.address = world.subject(from).addresses.at(0);
    change.value = total - pay;
    pt.tx.outputs.push_back(change);
    pt.pending.push_back(PendingOutput{from, total - pay, coins.front(), {}, false});
  }
  pt.tx.proofs.push_back(issue_token(world, pt.tx, "sig"));
  pt.submitter = from;
  return pt;
}

std::vector<OutPoint> TransparentScheme::scan_and_receive(World& world, SubjectId recipient) {
  const auto& mine = world.subject(recipient).addresses;
  auto& wallet = world.wallet(recipient);
  std::vector<OutPoint> found;
  for (const auto& entry : world.ledger().entries()) {
    for (std::uint32_t i = 0; i < entry.tx.outputs.size(); ++i) {
      const auto& out = entry.tx.outputs[i];
      if (!out.address || !out.value) continue;
      if (std::find(mine.begin(), mine.end(), *out.address) == mine.end()) continue;
      const OutPoint op{entry.index, i};
      bool known = false;
      for (const auto& coin : wallet.coins) {
        if (coin.where == op) {
          known = true;
          break;
        }
      }
      if (known) continue;
      if (world.truth_of(op).consumed_round) continue;
      WalletCoin coin;
      coin.where = op;
      coin.value = *out.value;
      coin.address = *out.address;
      wallet.coins.push_back(coin);
      found.push_back(op);
    }
  }
  return found;
}

ValidationResult TransparentScheme::validate(const World& world, const Transaction& tx) const {
  if (tx.scheme != kind()) {
    return ValidationResult::fail(RejectReason::Malformed, "wrong scheme tag");
  }
  std::uint64_t in_total = 0, out_total = 0;
  std::set<OutPoint> seen_inputs;
  for (const auto& in : tx.inputs) {
    if (!in.spends) {
      return ValidationResult::fail(RejectReason::Malformed, "input without outpoint");
    }
    if (in.spends->entry >= world.ledger().size()) {
      return ValidationResult::fail(RejectReason::Malformed, "outpoint entry does not exist");
    }
    const auto& src = world.ledger().at(in.spends->entry).tx;
    if (in.spends->output >= src.outputs.size() || !src.outputs[in.spends->output].value) {
      return ValidationResult::fail(RejectReason::Malformed, "outpoint output does not exist");
    }
    if (!seen_inputs.insert(*in.spends).second) {
      return ValidationResult::fail(RejectReason::DoubleSpend, "duplicate input in transaction");
    }
    if (world.truth_of(*in.spends).consumed_round) {
      return ValidationResult::fail(RejectReason::DoubleSpend, "outpoint already consumed");
    }
    in_total += *src.outputs[in.spends->output].value;
  }
  for (const auto& out : tx.outputs) {
    if (!out.address || !out.value || *out.value == 0) {
      return ValidationResult::fail(RejectReason::Malformed, "output missing address or value");
    }
    out_total += *out.value;
  }
  if (tx.kind != TxKind::Mint && in_total != out_total) {
    return ValidationResult::fail(RejectReason::Unbalanced,
                                  "inputs " + std::to_string(in_total) + " != outputs " +
                                      std::to_string(out_total));
  }
  if (tx.kind != TxKind::Mint && tx.inputs.empty()) {
    return ValidationResult::fail(RejectReason::Malformed, "transfer without inputs");
  }
  return check_tokens(world, tx);
}

Digest32 TransparentScheme::mix_output_address(World& world, SubjectId participant) {
  return world.subject(participant).addresses.at(1);
}

Digest32 CoinshuffleScheme::mix_output_address(World& world, SubjectId participant) {
  const Digest32 addr = KeyedHash("pseudonym").feed(random_digest(world.rng())).digest();
  world.subject(participant).addresses.push_back(addr);
  return addr;
}

std::uint64_t TransparentScheme::run_mix_impl(World& world, const std::vector<MixLeg>& legs) {
  if (legs.size() < 2) throw std::invalid_argument("mix needs at least 2 participants");
  PreparedTransfer pt;
  pt.tx = Transaction{kind(), TxKind::Mix, {}, {}, {}};
  struct Slot {
    SubjectId owner;
    std::uint64_t value;
    OutPoint parent;
    Digest32 address;
  };
  std::vector<Slot> slots;
  for (const auto& leg : legs) {
    const WalletCoin& coin = owned_unspent_coin(world, leg.participant, leg.coin);
    TxInput in;
    in.spends = leg.coin;
    pt.tx.inputs.push_back(in);
    pt.consumes.push_back(leg.coin);
    slots.push_back(Slot{leg.recipient, coin.value, leg.coin,
                         mix_output_address(world, leg.recipient)});
  }
  world.rng().shuffle(slots);
  for (const auto& slot : slots) {
    TxOutput out;
    out.address = slot.address;
    out.value = slot.value;
    pt.tx.outputs.push_back(out);
    pt.pending.push_back(PendingOutput{slot.owner, slot.value, slot.parent, {}, false});
  }
  pt.tx.proofs.push_back(issue_token(world, pt.tx, "sig"));
  pt.submitter = legs.front().participant;
  return world.submit_prepared(pt);
}

}  // namespace anonylink::detail

#include "schemes_impl.hpp"

namespace anonylink::detail {

OutPoint MimblewimbleScheme::mint(World& world, SubjectId owner, std::uint64_t value) {
  if (value == 0) throw std::invalid_argument("mint value must be positive");
  const auto& grp = world.group();
  const Scalar blinding = grp.random_scalar(world.rng());
  Transaction tx{kind(), TxKind::Mint, {}, {}, {}};
  TxOutput out;
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
  coin.blinding = blinding;
  coin.pedersen = out.pedersen;
  world.wallet(owner).coins.push_back(coin);
  return op;
}

PreparedTransfer MimblewimbleScheme::build_transfer(World& world, SubjectId from, SubjectId to,
                                                    const std::vector<OutPoint>& coins,
                                                    const TransferParams& params) {
  if (coins.empty()) throw std::invalid_argument("no input coins");
  const auto& grp = world.group();
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

  // the sender hands the coin tokens with their openings to the recipient;
  // the very same group elements then appear as the transaction inputs
  SecretShare share;
  share.scheme = kind();
  share.from = from;
  share.to = to;
  Scalar in_blind = 0;
  for (const auto* c : spent) {
    TxInput in;
    in.commitment = c->pedersen;
    pt.tx.inputs.push_back(in);
    pt.consumes.push_back(c->where);
    ShareCoin sc;
    sc.value = c->value;
    sc.blinding = c->blinding;
    sc.pedersen = c->pedersen;
    share.coins.push_back(sc);
    in_blind = grp.add_q(in_blind, *c->blinding);
  }
  pt.shares.push_back(share);

  Scalar out_blind = 0;
  auto add_output = [&](SubjectId owner, std::uint64_t value) {
    const Scalar blinding = grp.random_scalar(world.rng());
    out_blind = grp.add_q(out_blind, blinding);
    TxOutput out;
    out.pedersen = grp.pedersen(blinding, value);
    pt.tx.outputs.push_back(out);
    ShareCoin sc;
    sc.value = value;
    sc.blinding = blinding;
    sc.pedersen = out.pedersen;
    pt.pending.push_back(PendingOutput{owner, value, coins.front(), sc, false});
  };
  add_output(to, pay);            // recipient's fresh commitment
  if (pay < total) add_output(from, total - pay);  // sender's change commitment

  // product of outputs over product of inputs; balanced amounts cancel the
  // value generator, leaving a pure blinding term
  GroupElt excess = 1;
  for (const auto& out : pt.tx.outputs) excess = grp.mul(excess, *out.pedersen);
  for (const auto& in : pt.tx.inputs) excess = grp.mul(excess, grp.inv(*in.commitment));
  pt.tx.kernel_excess = excess;

  // challenger-checked: excess opens to value zero with blinding
  // out_blind - in_blind, i.e. the amounts balance
  pt.tx.proofs.push_back(issue_token(world, pt.tx, "kernel"));
  pt.submitter = to;  // the recipient constructs and submits the transaction
  return pt;
}

std::vector<OutPoint> MimblewimbleScheme::scan_and_receive(World& world, SubjectId recipient) {
  auto& wallet = world.wallet(recipient);
  std::vector<OutPoint> found;
  auto try_coin = [&](const ShareCoin& sc) {
    if (!sc.pedersen || !sc.blinding) return;
    if (world.group().pedersen(*sc.blinding, sc.value) != *sc.pedersen) return;
    const auto live = world.live_token(*sc.pedersen);
    if (!live) return;
    for (const auto& coin : wallet.coins) {
      if (coin.where == *live) return;
    }
    WalletCoin coin;
    coin.where = *live;
    coin.value = sc.value;
    coin.blinding = sc.blinding;
    coin.pedersen = sc.pedersen;
    wallet.coins.push_back(coin);
    found.push_back(*live);
  };
  for (const auto& share : wallet.received_shares) {
    for (const auto& sc : share.coins) try_coin(sc);
  }
  for (const auto& share : wallet.self_stash) {
    for (const auto& sc : share.coins) try_coin(sc);
  }
  return found;
}

ValidationResult MimblewimbleScheme::validate(const World& world, const Transaction& tx) const {
  if (tx.scheme != kind()) {
    return ValidationResult::fail(RejectReason::Malformed, "wrong scheme tag");
  }
  const auto& grp = world.group();
  std::set<GroupElt> in_tx;
  for (const auto& in : tx.inputs) {
    if (!in.commitment) {
      return ValidationResult::fail(RejectReason::Malformed, "input without commitment token");
    }
    if (!in_tx.insert(*in.commitment).second) {
      return ValidationResult::fail(RejectReason::DoubleSpend, "token repeated in transaction");
    }
    if (!world.live_token(*in.commitment)) {
      return ValidationResult::fail(RejectReason::DoubleSpend,
                                    "input token is not in the unspent set");
    }
  }
  std::set<GroupElt> out_tx;
  for (const auto& out : tx.outputs) {
    if (!out.pedersen) {
      return ValidationResult::fail(RejectReason::Malformed, "output without commitment token");
    }
    if (!out_tx.insert(*out.pedersen).second || world.live_token(*out.pedersen)) {
      return ValidationResult::fail(RejectReason::DuplicateCommitment,
                                    "output token already live");
    }
  }
  if (tx.kind != TxKind::Mint) {
    if (tx.inputs.empty()) {
      return ValidationResult::fail(RejectReason::Malformed, "transfer without inputs");
    }
    if (!tx.kernel_excess) {
      return ValidationResult::fail(RejectReason::Malformed, "missing kernel excess");
    }
    GroupElt excess = 1;
    for (const auto& out : tx.outputs) excess = grp.mul(excess, *out.pedersen);
    for (const auto& in : tx.inputs) excess = grp.mul(excess, grp.inv(*in.commitment));
    if (excess != *tx.kernel_excess) {
      return ValidationResult::fail(RejectReason::Unbalanced,
                                    "commitment product does not match the kernel excess");
    }
  }
  return check_tokens(world, tx);
}

}  // namespace anonylink::detail

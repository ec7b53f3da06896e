#include "schemes_impl.hpp"

namespace anonylink::detail {

Digest32 ZerocashScheme::address_of(const Digest32& sk) {
  return prf_u64("note-addr", sk, 0);
}

Digest32 ZerocashScheme::compute_commitment(const Digest32& recipient_pk, std::uint64_t value,
                                            const Digest32& rho, const Digest32& comm_r,
                                            const Digest32& comm_s) {
  // nested commitment: outer commits to (inner, value), inner to (pk, rho)
  const Digest32 payload_inner[] = {recipient_pk, rho};
  const Digest32 inner = commit("note-inner", comm_r, payload_inner);
  const Digest32 payload_outer[] = {inner};
  return commit("note-outer", comm_s, payload_outer, value);
}

Digest32 ZerocashScheme::compute_serial(const Digest32& sk, const Digest32& rho) {
  return prf("note-serial", sk, rho);
}

ZerocashScheme::CoinSecrets ZerocashScheme::make_coin(World& world, const Digest32& recipient_pk,
                                                      std::uint64_t value,
                                                      const std::optional<Digest32>& forced_rho) {
  CoinSecrets cs;
  cs.rho = forced_rho.value_or(random_digest(world.rng()));
  cs.comm_r = random_digest(world.rng());
  cs.comm_s = random_digest(world.rng());
  cs.commitment = compute_commitment(recipient_pk, value, cs.rho, cs.comm_r, cs.comm_s);
  return cs;
}

void ZerocashScheme::keygen(World& world, SubjectId subject) {
  auto& s = world.subject(subject);
  s.note_sk = random_digest(world.rng());
  s.note_pk = address_of(*s.note_sk);
}

OutPoint ZerocashScheme::mint(World& world, SubjectId owner, std::uint64_t value) {
  if (value == 0) throw std::invalid_argument("mint value must be positive");
  const auto& subj = world.subject(owner);
  const CoinSecrets cs = make_coin(world, *subj.note_pk, value);
  Transaction tx{kind(), TxKind::Mint, {}, {}, {}};
  TxOutput out;
  out.commitment = cs.commitment;
  tx.outputs.push_back(out);
  tx.proofs.push_back(issue_token(world, tx, "mint"));
  const std::uint64_t idx = world.append_from_faucet(tx);
  const OutPoint op{idx, 0};
  world.record_output_truth(op, TruthRecord{owner, value, world.round(), std::nullopt,
                                            std::nullopt, owner});
  WalletCoin coin;
  coin.where = op;
  coin.value = value;
  coin.rho = cs.rho;
  coin.comm_r = cs.comm_r;
  coin.comm_s = cs.comm_s;
  coin.commitment = cs.commitment;
  coin.serial = compute_serial(*subj.note_sk, cs.rho);
  world.wallet(owner).coins.push_back(coin);
  return op;
}

PreparedTransfer ZerocashScheme::build_transfer(World& world, SubjectId from, SubjectId to,
                                                const std::vector<OutPoint>& coins,
                                                const TransferParams& params) {
  if (coins.empty()) throw std::invalid_argument("no input coins");
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
    TxInput in;
    in.serial = c->serial;  // sn of the consumed coin, revealed here and only here
    pt.tx.inputs.push_back(in);
    pt.consumes.push_back(c->where);
  }

  const auto& recipient = world.subject(to);
  const CoinSecrets pay_cs = make_coin(world, *recipient.note_pk, pay, params.forced_rho);
  TxOutput pay_out;
  pay_out.commitment = pay_cs.commitment;
  pt.tx.outputs.push_back(pay_out);
  ShareCoin share_coin;
  share_coin.value = pay;
  share_coin.rho = pay_cs.rho;
  share_coin.comm_r = pay_cs.comm_r;
  share_coin.comm_s = pay_cs.comm_s;
  share_coin.commitment = pay_cs.commitment;
  pt.pending.push_back(PendingOutput{to, pay, coins.front(), share_coin, true});
  SecretShare share;
  share.scheme = kind();
  share.from = from;
  share.to = to;
  share.coins.push_back(share_coin);
  pt.shares.push_back(share);

  if (pay < total) {
    const auto& sender = world.subject(from);
    const CoinSecrets chg = make_coin(world, *sender.note_pk, total - pay);
    TxOutput chg_out;
    chg_out.commitment = chg.commitment;
    pt.tx.outputs.push_back(chg_out);
    ShareCoin chg_coin;
    chg_coin.value = total - pay;
    chg_coin.rho = chg.rho;
    chg_coin.comm_r = chg.comm_r;
    chg_coin.comm_s = chg.comm_s;
    chg_coin.commitment = chg.commitment;
    pt.pending.push_back(PendingOutput{from, total - pay, coins.front(), chg_coin, false});
  }

  // the pour statement: inputs owned and on the ledger, serials well formed,
  // amounts balance; checked here against the witness, published as a token
  pt.tx.proofs.push_back(issue_token(world, pt.tx, "pour"));
  pt.submitter = from;
  return pt;
}

std::vector<OutPoint> ZerocashScheme::scan_and_receive(World& world, SubjectId recipient) {
  auto& wallet = world.wallet(recipient);
  const auto& subj = world.subject(recipient);
  std::vector<OutPoint> found;
  auto try_coin = [&](const ShareCoin& sc) {
    if (!sc.commitment || !sc.rho || !sc.comm_r || !sc.comm_s) return;
    // trial recompute against our own address
    const Digest32 expect =
        compute_commitment(*subj.note_pk, sc.value, *sc.rho, *sc.comm_r, *sc.comm_s);
    if (expect != *sc.commitment) return;
    for (const auto& entry : world.ledger().entries()) {
      for (std::uint32_t i = 0; i < entry.tx.outputs.size(); ++i) {
        const auto& out = entry.tx.outputs[i];
        if (!out.commitment || *out.commitment != expect) continue;
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
        coin.rho = sc.rho;
        coin.comm_r = sc.comm_r;
        coin.comm_s = sc.comm_s;
        coin.commitment = sc.commitment;
        coin.serial = compute_serial(*subj.note_sk, *sc.rho);
        wallet.coins.push_back(coin);
        found.push_back(op);
      }
    }
  };
  for (const auto& share : wallet.received_shares) {
    for (const auto& sc : share.coins) try_coin(sc);
  }
  for (const auto& share : wallet.self_stash) {
    for (const auto& sc : share.coins) try_coin(sc);
  }
  return found;
}

ValidationResult ZerocashScheme::validate(const World& world, const Transaction& tx) const {
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
                                    "commitment already in the commitment list");
    }
  }
  if (tx.kind != TxKind::Mint && tx.inputs.empty()) {
    return ValidationResult::fail(RejectReason::Malformed, "transfer without inputs");
  }
  return check_tokens(world, tx);
}

}  // namespace anonylink::detail

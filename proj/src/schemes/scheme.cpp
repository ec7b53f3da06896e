#include "schemes_impl.hpp"

namespace anonylink {

std::string_view address_scheme_name(AddressScheme a) {
  switch (a) {
    case AddressScheme::Pseudonym: return "pseudonym";
    case AddressScheme::OneTimeAddress: return "one_time_address";
    case AddressScheme::AddressEncryption: return "address_encryption";
    case AddressScheme::Addressless: return "addressless";
  }
  return "?";
}

std::uint32_t Scheme::min_subjects(const WorldConfig&) const { return 2; }

std::uint64_t Scheme::run_mix_round(World&, const std::vector<MixLeg>&) {
  throw std::logic_error(std::string(name()) + " has no mix round");
}

WalletCoin* Scheme::find_wallet_coin(World& world, SubjectId owner, const OutPoint& op) {
  for (auto& coin : world.wallet(owner).coins) {
    if (coin.where == op) return &coin;
  }
  return nullptr;
}

std::unique_ptr<Scheme> make_scheme(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Bitcoin: return std::make_unique<detail::BitcoinScheme>();
    case SchemeKind::CoinJoin: return std::make_unique<detail::CoinJoinScheme>();
    case SchemeKind::Coinshuffle: return std::make_unique<detail::CoinshuffleScheme>();
    case SchemeKind::Zerocoin: return std::make_unique<detail::ZerocoinScheme>();
    case SchemeKind::Zerocash: return std::make_unique<detail::ZerocashScheme>();
    case SchemeKind::CryptoNote: return std::make_unique<detail::CryptoNoteScheme>();
    case SchemeKind::Mimblewimble: return std::make_unique<detail::MimblewimbleScheme>();
  }
  throw std::invalid_argument("unknown scheme kind");
}

std::uint64_t transfer(World& world, SubjectId from, SubjectId to,
                       const std::vector<OutPoint>& coins, const TransferParams& params) {
  PreparedTransfer pt = world.scheme().build_transfer(world, from, to, coins, params);
  return world.submit_prepared(pt);
}

namespace detail {

Digest32 token_statement(const Transaction& tx, std::string_view label) {
  return KeyedHash("proof-statement").feed(label).feed(tx.public_digest()).digest();
}

ProofToken issue_token(World& world, const Transaction& tx, std::string label) {
  ProofToken token;
  token.statement = token_statement(tx, label);
  token.label = std::move(label);
  token.verified = true;
  world.register_proof(token.statement);
  return token;
}

ValidationResult check_tokens(const World& world, const Transaction& tx) {
  if (tx.proofs.empty()) {
    return ValidationResult::fail(RejectReason::Malformed, "missing proof");
  }
  for (const auto& token : tx.proofs) {
    if (!token.verified) {
      return ValidationResult::fail(RejectReason::Malformed, "unverified proof token");
    }
    if (token.statement != token_statement(tx, token.label)) {
      return ValidationResult::fail(RejectReason::Malformed,
                                    "proof statement does not match transaction");
    }
    if (!world.proof_registered(token.statement)) {
      return ValidationResult::fail(RejectReason::Malformed, "proof statement never verified");
    }
  }
  return ValidationResult::ok();
}

WalletCoin& owned_unspent_coin(World& world, SubjectId owner, const OutPoint& op) {
  WalletCoin* coin = Scheme::find_wallet_coin(world, owner, op);
  if (coin == nullptr) {
    throw std::invalid_argument("subject does not hold that coin");
  }
  if (coin->spent) {
    throw std::invalid_argument("coin already spent");
  }
  return *coin;
}

}  // namespace detail
}  // namespace anonylink

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "anonylink/world.hpp"

namespace anonylink {

enum class AddressScheme : std::uint8_t { Pseudonym, OneTimeAddress, AddressEncryption, Addressless };

std::string_view address_scheme_name(AddressScheme a);

struct TransferParams {
  // Amount paid to the recipient. Defaults to the full value of the inputs;
  // anything left over becomes a change output back to the sender.
  std::optional<std::uint64_t> pay_value;
  // Chosen-parameter hooks for adversarial counterparties.
  std::optional<Digest32> recipient_address_override;
  std::optional<Digest32> forced_rho;  // reuse a serial seed on purpose
  std::optional<Scalar> forced_nonce;  // reuse a stealth nonce on purpose
};

struct MixLeg {
  SubjectId participant;  // contributes the input and can prove ownership
  OutPoint coin;
  SubjectId recipient;    // where this leg's shuffled output goes
};

// One coin scheme: what goes on the ledger, what travels as a secret share,
// and what the validator checks. All mutation happens through a World.
class Scheme {
 public:
  virtual ~Scheme() = default;

  virtual SchemeKind kind() const = 0;
  std::string_view name() const { return scheme_name(kind()); }

  virtual AddressScheme address_scheme() const = 0;
  // Whether value transfer requires sender->recipient secrets (a wallet
  // layer). Transparent schemes read everything off the ledger.
  virtual bool has_secret_share_layer() const = 0;
  virtual bool values_on_ledger() const = 0;
  virtual bool fixed_denomination() const { return false; }

  virtual std::uint32_t min_subjects(const WorldConfig& cfg) const;

  virtual void keygen(World& world, SubjectId subject) = 0;

  // Faucet mint: puts a coin on the ledger and its secrets in the owner's
  // wallet. Submitted by the faucet node so setup holdings carry no
  // transport fingerprint of their owners.
  virtual OutPoint mint(World& world, SubjectId owner, std::uint64_t value) = 0;

  // Builds (does not submit) a transfer consuming the given wallet coins.
  // The returned PreparedTransfer carries the ledger transaction, the exact
  // secret-share payloads, the submitting party, and challenger bookkeeping.
  virtual PreparedTransfer build_transfer(World& world, SubjectId from, SubjectId to,
                                          const std::vector<OutPoint>& coins,
                                          const TransferParams& params) = 0;

  // Moves incoming coins (matched against the ledger) into the wallet.
  // Returns the outpoints newly recognized.
  virtual std::vector<OutPoint> scan_and_receive(World& world, SubjectId recipient) = 0;

  virtual ValidationResult validate(const World& world, const Transaction& tx) const = 0;

  // Joint shuffle transaction; only the mixing schemes support it.
  virtual std::uint64_t run_mix_round(World& world, const std::vector<MixLeg>& legs);

  static WalletCoin* find_wallet_coin(World& world, SubjectId owner, const OutPoint& op);
};

std::unique_ptr<Scheme> make_scheme(SchemeKind kind);

// Convenience used by games and tests: build, deliver shares, submit from the
// scheme-defined party, apply effects, and return the entry index.
std::uint64_t transfer(World& world, SubjectId from, SubjectId to,
                       const std::vector<OutPoint>& coins, const TransferParams& params = {});

}  // namespace anonylink

#pragma once

#include "anonylink/schemes.hpp"

namespace anonylink::detail {

// Bitcoin-style transparent ledger: cleartext addresses and values, explicit
// outpoint references. CoinJoin and Coinshuffle add the joint mix on top.
class TransparentScheme : public Scheme {
 public:
  AddressScheme address_scheme() const override { return AddressScheme::Pseudonym; }
  bool has_secret_share_layer() const override { return false; }
  bool values_on_ledger() const override { return true; }

  void keygen(World& world, SubjectId subject) override;
  OutPoint mint(World& world, SubjectId owner, std::uint64_t value) override;
  PreparedTransfer build_transfer(World& world, SubjectId from, SubjectId to,
                                  const std::vector<OutPoint>& coins,
                                  const TransferParams& params) override;
  std::vector<OutPoint> scan_and_receive(World& world, SubjectId recipient) override;
  ValidationResult validate(const World& world, const Transaction& tx) const override;

 protected:
  virtual Digest32 mix_output_address(World& world, SubjectId participant);
  std::uint64_t run_mix_impl(World& world, const std::vector<MixLeg>& legs);
};

class BitcoinScheme final : public TransparentScheme {
 public:
  SchemeKind kind() const override { return SchemeKind::Bitcoin; }
};

class CoinJoinScheme final : public TransparentScheme {
 public:
  SchemeKind kind() const override { return SchemeKind::CoinJoin; }
  std::uint64_t run_mix_round(World& world, const std::vector<MixLeg>& legs) override {
    return run_mix_impl(world, legs);
  }
};

class CoinshuffleScheme final : public TransparentScheme {
 public:
  SchemeKind kind() const override { return SchemeKind::Coinshuffle; }
  AddressScheme address_scheme() const override { return AddressScheme::OneTimeAddress; }
  std::uint64_t run_mix_round(World& world, const std::vector<MixLeg>& legs) override {
    return run_mix_impl(world, legs);
  }

 protected:
  // fresh one-time address per mix output
  Digest32 mix_output_address(World& world, SubjectId participant) override;
};

// Fixed-denomination coins named by a hash commitment at mint time and by an
// unrelated serial number at spend time; set membership is an ideal oracle.
class ZerocoinScheme final : public Scheme {
 public:
  SchemeKind kind() const override { return SchemeKind::Zerocoin; }
  AddressScheme address_scheme() const override { return AddressScheme::Addressless; }
  bool has_secret_share_layer() const override { return true; }
  bool values_on_ledger() const override { return false; }
  bool fixed_denomination() const override { return true; }

  void keygen(World&, SubjectId) override {}
  OutPoint mint(World& world, SubjectId owner, std::uint64_t value) override;
  PreparedTransfer build_transfer(World& world, SubjectId from, SubjectId to,
                                  const std::vector<OutPoint>& coins,
                                  const TransferParams& params) override;
  std::vector<OutPoint> scan_and_receive(World& world, SubjectId recipient) override;
  ValidationResult validate(const World& world, const Transaction& tx) const override;
};

// Coins carry a nested hash commitment on creation and reveal a PRF-derived
// serial number on consumption; the pour statement is an ideal oracle.
class ZerocashScheme final : public Scheme {
 public:
  SchemeKind kind() const override { return SchemeKind::Zerocash; }
  AddressScheme address_scheme() const override { return AddressScheme::AddressEncryption; }
  bool has_secret_share_layer() const override { return true; }
  bool values_on_ledger() const override { return false; }

  void keygen(World& world, SubjectId subject) override;
  OutPoint mint(World& world, SubjectId owner, std::uint64_t value) override;
  PreparedTransfer build_transfer(World& world, SubjectId from, SubjectId to,
                                  const std::vector<OutPoint>& coins,
                                  const TransferParams& params) override;
  std::vector<OutPoint> scan_and_receive(World& world, SubjectId recipient) override;
  ValidationResult validate(const World& world, const Transaction& tx) const override;

  struct CoinSecrets {
    Digest32 rho, comm_r, comm_s, commitment;
  };
  static CoinSecrets make_coin(World& world, const Digest32& recipient_pk, std::uint64_t value,
                               const std::optional<Digest32>& forced_rho = std::nullopt);
  static Digest32 compute_commitment(const Digest32& recipient_pk, std::uint64_t value,
                                     const Digest32& rho, const Digest32& comm_r,
                                     const Digest32& comm_s);
  static Digest32 compute_serial(const Digest32& sk, const Digest32& rho);
  static Digest32 address_of(const Digest32& sk);
};

// Stealth destination keys, ring spends with key images, Pedersen amount
// commitments; ring/range statements are ideal oracles.
class CryptoNoteScheme final : public Scheme {
 public:
  SchemeKind kind() const override { return SchemeKind::CryptoNote; }
  AddressScheme address_scheme() const override { return AddressScheme::OneTimeAddress; }
  bool has_secret_share_layer() const override { return true; }
  bool values_on_ledger() const override { return false; }

  std::uint32_t min_subjects(const WorldConfig& cfg) const override;

  void keygen(World& world, SubjectId subject) override;
  OutPoint mint(World& world, SubjectId owner, std::uint64_t value) override;
  PreparedTransfer build_transfer(World& world, SubjectId from, SubjectId to,
                                  const std::vector<OutPoint>& coins,
                                  const TransferParams& params) override;
  std::vector<OutPoint> scan_and_receive(World& world, SubjectId recipient) override;
  ValidationResult validate(const World& world, const Transaction& tx) const override;

  struct StealthOutput {
    GroupElt destination;  // P
    GroupElt tx_pubkey;    // R
    Scalar onetime_secret; // x with P = g^x, known to the recipient
  };
  static StealthOutput derive_stealth(World& world, const Subject& recipient,
                                      const std::optional<Scalar>& forced_nonce = std::nullopt);
  static Digest32 key_image(const GroupParams& grp, Scalar onetime_secret, GroupElt destination);
};

// Coins are Pedersen commitments themselves; transfer hands over blinding and
// value, the recipient builds and submits the balanced transaction.
class MimblewimbleScheme final : public Scheme {
 public:
  SchemeKind kind() const override { return SchemeKind::Mimblewimble; }
  AddressScheme address_scheme() const override { return AddressScheme::Addressless; }
  bool has_secret_share_layer() const override { return true; }
  bool values_on_ledger() const override { return false; }

  void keygen(World&, SubjectId) override {}
  OutPoint mint(World& world, SubjectId owner, std::uint64_t value) override;
  PreparedTransfer build_transfer(World& world, SubjectId from, SubjectId to,
                                  const std::vector<OutPoint>& coins,
                                  const TransferParams& params) override;
  std::vector<OutPoint> scan_and_receive(World& world, SubjectId recipient) override;
  ValidationResult validate(const World& world, const Transaction& tx) const override;
};

// Challenger-side statement voucher: binds a label to the public digest.
ProofToken issue_token(World& world, const Transaction& tx, std::string label);
Digest32 token_statement(const Transaction& tx, std::string_view label);
ValidationResult check_tokens(const World& world, const Transaction& tx);

WalletCoin& owned_unspent_coin(World& world, SubjectId owner, const OutPoint& op);

}  // namespace anonylink::detail

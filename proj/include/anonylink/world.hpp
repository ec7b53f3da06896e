#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "anonylink/group.hpp"
#include "anonylink/hash.hpp"
#include "anonylink/rng.hpp"

namespace anonylink {

using json = nlohmann::json;

enum class SchemeKind : std::uint8_t {
  Bitcoin,
  CoinJoin,
  Coinshuffle,
  Zerocoin,
  Zerocash,
  CryptoNote,
  Mimblewimble,
};

std::string_view scheme_name(SchemeKind k);
SchemeKind scheme_from_name(std::string_view name);
const std::vector<SchemeKind>& all_schemes();

using SubjectId = std::uint32_t;

// Network-layer identity of a node. segment models the ISP/geographic prefix
// of the address; the pair stays fixed for a node for the whole run.
struct NodeAddress {
  std::uint32_t segment;
  std::uint32_t host;

  friend bool operator==(const NodeAddress&, const NodeAddress&) = default;
  friend auto operator<=>(const NodeAddress&, const NodeAddress&) = default;
};

// Ledger position of one transaction output; the public name of a coin.
struct OutPoint {
  std::uint64_t entry;
  std::uint32_t output;

  friend bool operator==(const OutPoint&, const OutPoint&) = default;
  friend auto operator<=>(const OutPoint&, const OutPoint&) = default;
};

enum class TxKind : std::uint8_t { Mint, Transfer, Mix };

// Challenger-issued voucher that a zero-knowledge statement was checked
// against its witness. The statement digest binds the public transaction
// content, so any later mutation invalidates the token.
struct ProofToken {
  std::string label;
  Digest32 statement;
  bool verified = false;
};

struct TxInput {
  std::optional<OutPoint> spends;        // transparent reference
  std::vector<OutPoint> ring;            // candidate set for ring spends
  std::optional<Digest32> key_image;     // double-spend tag for ring spends
  std::optional<Digest32> serial;        // serial-number reveal
  std::optional<GroupElt> commitment;    // commitment-token reveal (by value)
};

struct TxOutput {
  std::optional<Digest32> address;       // pseudonymous address, cleartext
  std::optional<std::uint64_t> value;    // cleartext amount
  std::optional<Digest32> commitment;    // hash coin commitment
  std::optional<GroupElt> stealth_key;   // one-time destination key P
  std::optional<GroupElt> tx_pubkey;     // per-output nonce key R
  std::optional<GroupElt> pedersen;      // Pedersen amount commitment / coin token
};

struct Transaction {
  SchemeKind scheme;
  TxKind kind;
  std::vector<TxInput> inputs;
  std::vector<TxOutput> outputs;
  std::vector<ProofToken> proofs;
  // Commitment-token schemes publish the excess of outputs over inputs here;
  // a zero-value opening of it is what the kernel proof certifies.
  std::optional<GroupElt> kernel_excess;

  // Digest of everything validator-visible; proof statements bind to this.
  Digest32 public_digest() const;
};

struct LedgerEntry {
  std::uint32_t round;
  std::uint64_t index;
  Transaction tx;
};

// Append-only ordered transaction log.
class SharedLedger {
 public:
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const LedgerEntry& at(std::uint64_t i) const { return entries_.at(i); }
  const TxOutput& output_at(const OutPoint& op) const {
    return entries_.at(op.entry).tx.outputs.at(op.output);
  }

  // Chained digest of the first k entries; unchanged prefixes keep their hash.
  Digest32 prefix_digest(std::size_t k) const;

 private:
  friend class World;
  std::uint64_t append(std::uint32_t round, Transaction tx);

  std::vector<LedgerEntry> entries_;
};

enum class PayloadVisibility : std::uint8_t { Opaque, Cleartext };
enum class PayloadKind : std::uint8_t { Transaction, Share };

struct TransportObservation {
  std::uint32_t round;
  NodeAddress origin;
  PayloadKind payload_kind;
  std::uint64_t payload_ref;  // ledger entry index or share sequence number
  PayloadVisibility visibility;
};

// One coin's worth of secrets handed from a counterparty.
struct ShareCoin {
  std::uint64_t value = 0;
  std::optional<Digest32> rho;       // serial seed
  std::optional<Digest32> comm_r;    // inner commitment randomness
  std::optional<Digest32> comm_s;    // outer commitment randomness
  std::optional<Digest32> commitment;
  std::optional<Scalar> blinding;
  std::optional<GroupElt> pedersen;
  std::optional<GroupElt> stealth_key;
};

struct SecretShare {
  std::uint64_t seq = 0;
  SchemeKind scheme;
  SubjectId from;
  SubjectId to;
  std::uint32_t round = 0;
  std::vector<ShareCoin> coins;
};

// A spendable coin as the owner's wallet sees it.
struct WalletCoin {
  OutPoint where;
  std::uint64_t value = 0;
  bool spent = false;
  std::optional<Digest32> address;        // transparent holding address
  std::optional<Digest32> rho, comm_r, comm_s, commitment, serial;
  std::optional<Scalar> onetime_secret;   // x with P = g^x
  std::optional<GroupElt> stealth_key;
  std::optional<Scalar> blinding;
  std::optional<GroupElt> pedersen;
};

struct WalletStore {
  SubjectId owner = 0;
  std::vector<WalletCoin> coins;
  std::vector<SecretShare> received_shares;
  // Secrets for self-owned outputs (change, remints) that have not been
  // scanned into `coins` yet. Not a network message.
  std::vector<SecretShare> self_stash;

  std::vector<std::size_t> unspent_indices() const;
};

struct Subject {
  SubjectId id;
  NodeAddress addr;
  std::vector<Digest32> addresses;  // transparent pseudonyms; [0] spend, [1] receive
  std::optional<Digest32> note_sk, note_pk;   // hash-commitment scheme keys
  std::optional<Scalar> view_sk, spend_sk;    // stealth-address key pair (a, b)
  std::optional<GroupElt> view_pk, spend_pk;  // (A, B)
};

// Challenger-private provenance of one output.
struct TruthRecord {
  SubjectId owner;
  std::uint64_t value;
  std::uint32_t created_round;
  std::optional<std::uint32_t> consumed_round;
  std::optional<OutPoint> parent;  // the coin this one was funded from
  SubjectId created_by;
};

enum class RejectReason : std::uint8_t { DoubleSpend, Unbalanced, DuplicateCommitment, Malformed };

std::string_view reject_reason_name(RejectReason r);

struct ValidationResult {
  bool accepted;
  std::optional<RejectReason> reason;
  std::string detail;
  static ValidationResult ok() { return {true, std::nullopt, {}}; }
  static ValidationResult fail(RejectReason r, std::string detail) {
    return {false, r, std::move(detail)};
  }
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(RejectReason reason, const std::string& detail)
      : std::runtime_error(std::string(reject_reason_name(reason)) + ": " + detail),
        reason_(reason) {}
  RejectReason reason() const { return reason_; }

 private:
  RejectReason reason_;
};

struct WorldConfig {
  SchemeKind scheme = SchemeKind::Bitcoin;
  std::uint32_t subjects = 4;
  std::uint64_t seed = 42;
  std::uint32_t ring_size = 4;
  std::uint32_t mix_size = 4;
  std::uint64_t denomination = 1;  // fixed-denomination schemes
  GroupProfile group = GroupProfile::Desk64;
  bool mixnet = false;
};

class Scheme;

// Challenger-side description of an output of a prepared transaction, used to
// stash secrets and write ground truth once the transaction is accepted.
struct PendingOutput {
  SubjectId owner;
  std::uint64_t value;
  std::optional<OutPoint> parent;
  ShareCoin secrets;     // what the owner needs to spend it later
  bool deliver_by_share; // true: travels in a SecretShare; false: self stash
};

struct PreparedTransfer {
  Transaction tx;
  SubjectId submitter;
  std::vector<SecretShare> shares;       // counterparty deliveries (network)
  std::vector<PendingOutput> pending;    // per output, same order as tx.outputs
  std::vector<OutPoint> consumes;        // ground-truth spends
};

// The full simulated universe for one trial: subjects with keys and network
// addresses, the shared ledger, the transport observation log, every wallet,
// and the challenger's omniscient ground truth.
class World {
 public:
  explicit World(const WorldConfig& config);
  ~World();

  World(const World&) = delete;
  World& operator=(const World&) = delete;

  const WorldConfig& config() const { return cfg_; }
  const GroupParams& group() const { return grp_; }
  Rng& rng() { return rng_; }
  Scheme& scheme() { return *scheme_; }
  const Scheme& scheme() const { return *scheme_; }

  std::uint32_t round() const { return round_; }
  void advance_round() { ++round_; }

  const std::vector<Subject>& subjects() const { return subjects_; }
  Subject& subject(SubjectId id) { return subjects_.at(id); }
  WalletStore& wallet(SubjectId id) { return wallets_.at(id); }
  const WalletStore& wallet(SubjectId id) const { return wallets_.at(id); }

  const SharedLedger& ledger() const { return ledger_; }
  const std::vector<TransportObservation>& transport() const { return transport_; }

  void set_transport_anonymizer(bool enabled) { mixnet_ = enabled; }
  bool transport_anonymizer() const { return mixnet_; }

  // Validates and appends; records exactly one transport observation from the
  // submitter (the faucet submits mints). Throws ValidationError on reject,
  // leaving all state untouched.
  std::uint64_t submit(SubjectId submitter, const Transaction& tx);

  // Full pipeline for a prepared transfer: deliver its shares, submit it from
  // the scheme-defined party, then apply wallet/ground-truth effects.
  std::uint64_t submit_prepared(const PreparedTransfer& pt);
  void deliver_shares(const PreparedTransfer& pt);

  void send_secret_share(SubjectId from, SubjectId to, SecretShare share);

  // Ground truth access is challenger-only; adversary views never touch it.
  const std::map<OutPoint, TruthRecord>& ground_truth() const { return truth_; }
  const TruthRecord& truth_of(const OutPoint& op) const { return truth_.at(op); }

  // Ledger outputs whose ground truth says unconsumed, oldest first.
  std::vector<OutPoint> unspent_outputs() const;

  bool serial_seen(const Digest32& s) const { return serials_seen_.count(s) > 0; }
  bool key_image_seen(const Digest32& k) const { return key_images_seen_.count(k) > 0; }
  bool commitment_seen(const Digest32& c) const { return commitments_seen_.count(c) > 0; }
  std::optional<OutPoint> live_token(GroupElt pedersen) const;

  void register_proof(const Digest32& statement) { proof_registry_.insert(statement); }
  bool proof_registered(const Digest32& statement) const {
    return proof_registry_.count(statement) > 0;
  }

  // Sum of minted value must equal the value sitting in unconsumed outputs.
  bool conservation_holds() const;

  json trace_json() const;  // canonical WorldTrace document

  // Challenger bookkeeping used by schemes; not part of the public story.
  void record_output_truth(const OutPoint& op, TruthRecord rec);
  void mark_consumed(const OutPoint& op);
  void note_serial(const Digest32& s) { serials_seen_.insert(s); }
  void note_key_image(const Digest32& k) { key_images_seen_.insert(k); }
  void note_commitment(const Digest32& c) { commitments_seen_.insert(c); }
  std::uint64_t next_share_seq() { return share_seq_++; }
  NodeAddress faucet_address() const { return faucet_addr_; }
  std::uint64_t append_from_faucet(const Transaction& tx);

 private:
  NodeAddress observed_origin(const NodeAddress& real);
  void record_observation(const NodeAddress& origin, PayloadKind kind, std::uint64_t ref);
  PayloadVisibility payload_visibility() const;
  std::uint64_t append_validated(const NodeAddress& origin, const Transaction& tx);

  WorldConfig cfg_;
  const GroupParams& grp_;
  Rng rng_;
  std::unique_ptr<Scheme> scheme_;
  std::vector<Subject> subjects_;
  std::vector<WalletStore> wallets_;
  SharedLedger ledger_;
  std::vector<TransportObservation> transport_;
  std::map<OutPoint, TruthRecord> truth_;
  std::set<Digest32> serials_seen_, key_images_seen_, commitments_seen_, proof_registry_;
  std::map<GroupElt, OutPoint> live_tokens_;
  std::uint32_t round_ = 0;
  bool mixnet_ = false;
  std::uint64_t share_seq_ = 0;
  std::uint64_t total_minted_ = 0;
  NodeAddress faucet_addr_;

  friend class Scheme;
};

// JSON encoders for the public faces (adversary views reuse these).
json to_json(const OutPoint& op);
json to_json(const NodeAddress& a);
json to_json(const Transaction& tx);
json to_json(const LedgerEntry& e);
json to_json(const TransportObservation& o);

}  // namespace anonylink

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "anonylink/hash.hpp"

namespace anonylink {

// Element of the prime-order subgroup, stored as residue mod p.
using GroupElt = std::uint64_t;
// Exponent mod q.
using Scalar = std::uint64_t;

enum class GroupProfile { Desk64, Small32 };

GroupProfile group_profile_from_name(std::string_view name);
std::string_view group_profile_name(GroupProfile p);

// Multiplicative subgroup of Z_p^* with prime order q, p = 2q + 1.
// Two fixed parameter sets are published here: the default desk profile and a
// small profile that keeps fuzz loops cheap. h is derived from g by
// hash-to-group so no discrete-log relation between the two is known.
struct GroupParams {
  std::uint64_t p;
  std::uint64_t q;
  GroupElt g;
  GroupElt h;
  GroupProfile profile;

  static const GroupParams& get(GroupProfile profile);

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }

  GroupElt pow(GroupElt base, Scalar e) const {
    std::uint64_t acc = 1, cur = base % p;
    while (e > 0) {
      if (e & 1u) acc = mul(acc, cur);
      cur = mul(cur, cur);
      e >>= 1;
    }
    return acc;
  }

  GroupElt inv(GroupElt a) const { return pow(a, q - 1); }  // a^q = 1 for subgroup members

  Scalar add_q(Scalar a, Scalar b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) + b) % q);
  }
  Scalar sub_q(Scalar a, Scalar b) const { return add_q(a % q, q - (b % q)); }
  Scalar mul_q(Scalar a, Scalar b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a % q) * (b % q)) % q);
  }

  bool in_subgroup(GroupElt a) const { return a != 0 && pow(a, q) == 1; }

  Scalar scalar_from_digest(const Digest32& d) const { return digest_to_u64(d) % q; }

  Scalar random_scalar(class Rng& rng) const;

  // Hash arbitrary bytes onto the subgroup: x^((p-1)/q) for x drawn from the
  // digest, retrying on the identity.
  GroupElt hash_to_group(std::string_view tag, const Digest32& seed) const;

  // Pedersen commitment g^blinding * h^value.
  GroupElt pedersen(Scalar blinding, std::uint64_t value) const {
    return mul(pow(g, blinding % q), pow(h, value % q));
  }
};

bool miller_rabin_is_prime(std::uint64_t n);

}  // namespace anonylink

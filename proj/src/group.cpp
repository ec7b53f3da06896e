#include "anonylink/group.hpp"

#include "anonylink/rng.hpp"

namespace anonylink {

namespace {

GroupParams make_params(std::uint64_t p, std::uint64_t q, GroupElt g, GroupProfile profile) {
  GroupParams params{p, q, g, 0, profile};
  Digest32 seed = Sha256::of(std::string("anonylink/group/h/") + std::to_string(p));
  params.h = params.hash_to_group("derive-h", seed);
  if (params.h == params.g || params.h == 1) {
    throw std::logic_error("degenerate h derivation");
  }
  return params;
}

}  // namespace

GroupProfile group_profile_from_name(std::string_view name) {
  if (name == "desk64") return GroupProfile::Desk64;
  if (name == "small32") return GroupProfile::Small32;
  throw std::invalid_argument("unknown group profile: " + std::string(name));
}

std::string_view group_profile_name(GroupProfile p) {
  switch (p) {
    case GroupProfile::Desk64: return "desk64";
    case GroupProfile::Small32: return "small32";
  }
  return "?";
}

const GroupParams& GroupParams::get(GroupProfile profile) {
  // p = 2q + 1 with p, q prime; g = 2^2 mod p generates the order-q subgroup
  // of quadratic residues.
  static const GroupParams desk64 =
      make_params(5749990816812799163ULL, 2874995408406399581ULL, 4, GroupProfile::Desk64);
  static const GroupParams small32 =
      make_params(1801196183ULL, 900598091ULL, 4, GroupProfile::Small32);
  switch (profile) {
    case GroupProfile::Desk64: return desk64;
    case GroupProfile::Small32: return small32;
  }
  throw std::invalid_argument("unknown group profile");
}

Scalar GroupParams::random_scalar(Rng& rng) const {
  // avoid 0 so commitments and keys never degenerate to the identity
  return 1 + rng.uniform(q - 1);
}

GroupElt GroupParams::hash_to_group(std::string_view tag, const Digest32& seed) const {
  for (std::uint64_t ctr = 0;; ++ctr) {
    Digest32 d = KeyedHash("hash-to-group").key(seed).feed(tag).feed_u64(ctr).digest();
    const std::uint64_t x = digest_to_u64(d) % p;
    if (x == 0) continue;
    const GroupElt cand = pow(x, (p - 1) / q);
    if (cand != 1) return cand;  // nonidentity element of a prime-order group generates it
  }
}

bool miller_rabin_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powmod = [&](std::uint64_t base, std::uint64_t e) {
    std::uint64_t acc = 1;
    base %= n;
    while (e > 0) {
      if (e & 1u) acc = mulmod(acc, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return acc;
  };
  // deterministic witness set for 64-bit inputs
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace anonylink

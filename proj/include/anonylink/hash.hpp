#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace anonylink {

using Digest32 = std::array<std::uint8_t, 32>;

std::string hex(const Digest32& d);
std::string hex_prefix(const Digest32& d, std::size_t bytes);

// Plain SHA-256.
class Sha256 {
 public:
  Sha256();
  Sha256& update(const void* data, std::size_t len);
  Sha256& update(std::string_view s) { return update(s.data(), s.size()); }
  Sha256& update(const Digest32& d) { return update(d.data(), d.size()); }
  Sha256& update_u64(std::uint64_t v);
  Digest32 finish();

  static Digest32 of(std::string_view s) { return Sha256().update(s).finish(); }

 private:
  void compress(const std::uint8_t* block);

  std::uint32_t h_[8];
  std::uint8_t buf_[64];
  std::size_t buf_len_ = 0;
  std::uint64_t total_ = 0;
};

// Domain-separated keyed hash. Every commitment and pseudo-random function in
// the coin schemes goes through here; the tag keeps the uses independent.
class KeyedHash {
 public:
  explicit KeyedHash(std::string_view tag);
  KeyedHash& key(const Digest32& k);
  KeyedHash& key_u64(std::uint64_t k);
  KeyedHash& feed(const Digest32& d);
  KeyedHash& feed(std::string_view s);
  KeyedHash& feed_u64(std::uint64_t v);
  Digest32 digest();

 private:
  Sha256 inner_;
};

// PRF(key, input) under a named domain tag.
Digest32 prf(std::string_view tag, const Digest32& key, const Digest32& input);
Digest32 prf_u64(std::string_view tag, const Digest32& key, std::uint64_t input);

// COMM_r(payload): commitment keyed by randomness r.
Digest32 commit(std::string_view tag, const Digest32& randomness, std::span<const Digest32> payload,
                std::uint64_t value_field = 0);

// First 8 bytes of a digest as a big-endian integer.
std::uint64_t digest_to_u64(const Digest32& d);

Digest32 random_digest(class Rng& rng);

}  // namespace anonylink

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anonylink/attacks.hpp"

namespace anonylink {

// Batch-run configuration: one canonical machine-readable document; command
// line flags override file values.
struct RunConfig {
  std::vector<SchemeKind> schemes;  // empty = all seven
  std::optional<SchemeKind> scheme;
  std::optional<Attack> attack;
  std::optional<Medium> medium;
  std::uint32_t trials = 10000;
  std::uint64_t seed = 42;
  std::uint32_t candidates = 8;
  std::uint32_t ring_size = 4;
  std::uint32_t mix_size = 4;
  std::uint64_t denomination = 1;
  bool mixnet = false;
  GroupProfile group = GroupProfile::Desk64;
  std::uint32_t threads = 0;
  std::string format = "json";

  json to_json() const;
  static RunConfig from_json(const json& j);

  // Base knobs as a GameConfig; scheme/attack/medium filled by the caller.
  GameConfig game_base() const;
};

}  // namespace anonylink

#include "anonylink/config.hpp"

namespace anonylink {

json RunConfig::to_json() const {
  json j{{"trials", trials},
         {"seed", seed},
         {"candidates", candidates},
         {"ring_size", ring_size},
         {"mix_size", mix_size},
         {"denomination", denomination},
         {"mixnet", mixnet},
         {"group", std::string(group_profile_name(group))},
         {"threads", threads},
         {"format", format}};
  if (!schemes.empty()) {
    json list = json::array();
    for (SchemeKind k : schemes) list.push_back(std::string(scheme_name(k)));
    j["schemes"] = std::move(list);
  }
  if (scheme) j["scheme"] = std::string(scheme_name(*scheme));
  if (attack) j["attack"] = std::string(attack_name(*attack));
  if (medium) j["medium"] = std::string(medium_name(*medium));
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  if (j.contains("trials")) c.trials = j.at("trials").get<std::uint32_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("candidates")) c.candidates = j.at("candidates").get<std::uint32_t>();
  if (j.contains("ring_size")) c.ring_size = j.at("ring_size").get<std::uint32_t>();
  if (j.contains("mix_size")) c.mix_size = j.at("mix_size").get<std::uint32_t>();
  if (j.contains("denomination")) c.denomination = j.at("denomination").get<std::uint64_t>();
  if (j.contains("mixnet")) c.mixnet = j.at("mixnet").get<bool>();
  if (j.contains("group")) c.group = group_profile_from_name(j.at("group").get<std::string>());
  if (j.contains("threads")) c.threads = j.at("threads").get<std::uint32_t>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("schemes")) {
    for (const auto& s : j.at("schemes")) c.schemes.push_back(scheme_from_name(s.get<std::string>()));
  }
  if (j.contains("scheme")) c.scheme = scheme_from_name(j.at("scheme").get<std::string>());
  if (j.contains("attack")) c.attack = attack_from_name(j.at("attack").get<std::string>());
  if (j.contains("medium")) c.medium = medium_from_name(j.at("medium").get<std::string>());
  return c;
}

GameConfig RunConfig::game_base() const {
  GameConfig g;
  g.trials = trials;
  g.seed = seed;
  g.candidates = candidates;
  g.ring_size = ring_size;
  g.mix_size = mix_size;
  g.denomination = denomination;
  g.mixnet = mixnet;
  g.group = group;
  g.threads = threads;
  return g;
}

}  // namespace anonylink

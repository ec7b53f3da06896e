#include "anonylink/evaluator.hpp"

#include <sstream>

namespace anonylink {

namespace {

std::string display_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::Bitcoin: return "Bitcoin";
    case SchemeKind::CoinJoin: return "CoinJoin";
    case SchemeKind::Coinshuffle: return "Coinshuffle";
    case SchemeKind::Zerocoin: return "Zerocoin";
    case SchemeKind::Zerocash: return "Zerocash";
    case SchemeKind::CryptoNote: return "CryptoNote";
    case SchemeKind::Mimblewimble: return "Mimblewimble";
  }
  return "?";
}

}  // namespace

std::string_view verdict_class_name(VerdictClass v) {
  switch (v) {
    case VerdictClass::Resistant: return "resistant";
    case VerdictClass::ProbabilisticallyResistant: return "probabilistic";
    case VerdictClass::Unresistant: return "unresistant";
    case VerdictClass::NotApplicable: return "not_applicable";
  }
  return "?";
}

VerdictClass verdict_class_from_name(std::string_view name) {
  for (VerdictClass v : {VerdictClass::Resistant, VerdictClass::ProbabilisticallyResistant,
                         VerdictClass::Unresistant, VerdictClass::NotApplicable}) {
    if (verdict_class_name(v) == name) return v;
  }
  throw std::invalid_argument("unknown verdict class: " + std::string(name));
}

std::string verdict_symbol(VerdictClass v) {
  switch (v) {
    case VerdictClass::Resistant: return "✓✓";
    case VerdictClass::ProbabilisticallyResistant: return "✓(prob.)";
    case VerdictClass::Unresistant: return "✗";
    case VerdictClass::NotApplicable: return "−";
  }
  return "?";
}

RenderFormat render_format_from_name(std::string_view name) {
  if (name == "json") return RenderFormat::Json;
  if (name == "markdown" || name == "md") return RenderFormat::Markdown;
  if (name == "csv") return RenderFormat::Csv;
  throw std::invalid_argument("unknown render format: " + std::string(name));
}

ResistanceVerdict classify(const AttackOutcome& outcome) {
  ResistanceVerdict v;
  v.evidence = outcome;
  if (!outcome.applicable) {
    v.level = VerdictClass::NotApplicable;
    return v;
  }
  if (outcome.trials < kClassifyMinTrials) {
    throw std::invalid_argument("need at least " + std::to_string(kClassifyMinTrials) +
                                " trials to classify, got " + std::to_string(outcome.trials));
  }
  const Interval decision = wilson_interval(outcome.successes, outcome.trials, kDecisionZ);
  const bool overlaps =
      outcome.baseline_measured
          ? std::abs(outcome.success_rate - outcome.baseline) <=
                decision.half_width() +
                    wilson_interval(outcome.baseline_successes, outcome.trials, kDecisionZ)
                        .half_width()
          : decision.contains(outcome.baseline);
  if (overlaps) {
    v.level = VerdictClass::Resistant;
  } else if (outcome.success_rate >= kUnresistantThreshold) {
    v.level = VerdictClass::Unresistant;
  } else {
    v.level = VerdictClass::ProbabilisticallyResistant;
    v.p_est = outcome.success_rate;
  }
  return v;
}

const std::vector<std::pair<Attack, Medium>>& matrix_columns() {
  static const std::vector<std::pair<Attack, Medium>> cols = {
      {Attack::Slla, Medium::CoinToCoin},   {Attack::Slla, Medium::CoinToValue},
      {Attack::Slla, Medium::CoinToTime},   {Attack::Tlla, Medium::TranToTran},
      {Attack::Tlla, Medium::CoinToCoin},   {Attack::Rccla, Medium::SentCoin},
      {Attack::Rccla, Medium::CoinToValue}, {Attack::Rccla, Medium::CoinToTime},
      {Attack::Sccla, Medium::ConsumedCoin},{Attack::Sccla, Medium::CoinToValue},
      {Attack::Sccla, Medium::CoinToTime},
  };
  return cols;
}

const MatrixCell* EvaluationMatrix::find(SchemeKind scheme, Attack attack, Medium medium) const {
  for (const auto& row : rows) {
    if (row.scheme != scheme) continue;
    for (const auto& cell : row.cells) {
      if (cell.attack == attack && cell.medium == medium) return &cell;
    }
  }
  return nullptr;
}

EvaluationMatrix build_matrix(const GameConfig& base, std::vector<SchemeKind> schemes) {
  if (base.trials < kClassifyMinTrials) {
    throw std::invalid_argument("matrix verdicts need at least " +
                                std::to_string(kClassifyMinTrials) + " trials per cell");
  }
  if (schemes.empty()) schemes = all_schemes();
  EvaluationMatrix m;
  m.seed = base.seed;
  m.trials = base.trials;

  GameConfig canonical = base;
  canonical.scheme = SchemeKind::Bitcoin;
  canonical.attack = Attack::Slla;
  canonical.medium = Medium::CoinToCoin;
  json cfg_json{{"trials", canonical.trials},
                {"seed", canonical.seed},
                {"candidates", canonical.candidates},
                {"ring_size", canonical.ring_size},
                {"mix_size", canonical.mix_size},
                {"denomination", canonical.denomination},
                {"mixnet", canonical.mixnet},
                {"group", std::string(group_profile_name(canonical.group))}};
  m.base_config = cfg_json;
  m.config_digest = hex_prefix(Sha256::of(cfg_json.dump()), 16);

  for (SchemeKind scheme : schemes) {
    MatrixRow row;
    row.scheme = scheme;
    for (const auto& [attack, medium] : matrix_columns()) {
      GameConfig cfg = base;
      cfg.scheme = scheme;
      cfg.attack = attack;
      cfg.medium = medium;
      ResistanceVerdict verdict;
      try {
        verdict = classify(run_game(cfg));
      } catch (const std::invalid_argument& e) {
        // a cell the configuration cannot express stays in the grid as
        // not-applicable with the reason attached
        verdict.level = VerdictClass::NotApplicable;
        verdict.evidence = AttackOutcome::not_applicable(cfg, e.what());
      }
      row.cells.push_back(MatrixCell{attack, medium, verdict});
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

AnonymityAssessment assess_anonymity(SchemeKind scheme, const EvaluationMatrix& matrix) {
  const MatrixCell* slla = matrix.find(scheme, Attack::Slla, Medium::CoinToCoin);
  if (slla == nullptr) {
    throw std::invalid_argument("matrix has no ledger verdicts for " +
                                std::string(scheme_name(scheme)));
  }
  AnonymityAssessment a;
  a.scheme = scheme;
  a.addressing = make_scheme(scheme)->address_scheme();
  if (slla->verdict.level == VerdictClass::Resistant) {
    a.reasons.emplace_back("slla_resistant");
  } else if (slla->verdict.level == VerdictClass::ProbabilisticallyResistant) {
    a.reasons.emplace_back("slla_probabilistically_resistant");
  } else {
    a.reasons.emplace_back("slla_unresistant");
  }
  bool ok = slla->verdict.level == VerdictClass::Resistant;
  switch (a.addressing) {
    case AddressScheme::Addressless:
      a.reasons.emplace_back("addressless");
      ok = true;
      break;
    case AddressScheme::AddressEncryption:
      a.reasons.emplace_back("address_encryption");
      ok = true;
      break;
    case AddressScheme::OneTimeAddress:
      a.reasons.emplace_back("one_time_address");
      ok = true;
      break;
    case AddressScheme::Pseudonym:
      break;
  }
  a.indirect_deanon_resistant = ok;
  return a;
}

json to_json(const AnonymityAssessment& a) {
  return json{{"scheme", std::string(scheme_name(a.scheme))},
              {"addressing", std::string(address_scheme_name(a.addressing))},
              {"indirect_deanon_resistant", a.indirect_deanon_resistant},
              {"reasons", a.reasons}};
}

json EvaluationMatrix::to_json() const {
  json rows_j = json::object();
  for (const auto& row : rows) {
    json per_attack = json::object();
    for (const auto& cell : row.cells) {
      json cell_j{{"level", std::string(verdict_class_name(cell.verdict.level))},
                  {"evidence", cell.verdict.evidence.to_json()}};
      if (cell.verdict.level == VerdictClass::ProbabilisticallyResistant) {
        cell_j["p_est"] = cell.verdict.p_est;
      }
      per_attack[std::string(attack_name(cell.attack))][std::string(medium_name(cell.medium))] =
          std::move(cell_j);
    }
    rows_j[std::string(scheme_name(row.scheme))] = std::move(per_attack);
  }
  json assessments = json::object();
  for (const auto& row : rows) {
    assessments[std::string(scheme_name(row.scheme))] =
        anonylink::to_json(assess_anonymity(row.scheme, *this));
  }
  return json{{"metadata", json{{"seed", seed},
                                {"trials", trials},
                                {"config_digest", config_digest},
                                {"config", base_config}}},
              {"cells", std::move(rows_j)},
              {"assessments", std::move(assessments)}};
}

EvaluationMatrix EvaluationMatrix::from_json(const json& j) {
  EvaluationMatrix m;
  const auto& meta = j.at("metadata");
  m.seed = meta.at("seed").get<std::uint64_t>();
  m.trials = meta.at("trials").get<std::uint32_t>();
  m.config_digest = meta.at("config_digest").get<std::string>();
  m.base_config = meta.at("config");
  for (const auto& [scheme_key, per_attack] : j.at("cells").items()) {
    MatrixRow row;
    row.scheme = scheme_from_name(scheme_key);
    for (const auto& [attack, medium] : matrix_columns()) {
      const auto& cell_j =
          per_attack.at(std::string(attack_name(attack))).at(std::string(medium_name(medium)));
      MatrixCell cell{attack, medium, {}};
      cell.verdict.level = verdict_class_from_name(cell_j.at("level").get<std::string>());
      if (cell_j.contains("p_est")) cell.verdict.p_est = cell_j.at("p_est").get<double>();
      const auto& ev = cell_j.at("evidence");
      AttackOutcome& o = cell.verdict.evidence;
      o.scheme = row.scheme;
      o.attack = attack;
      o.medium = medium;
      o.applicable = ev.at("applicable").get<bool>();
      if (o.applicable) {
        o.trials = ev.at("trials").get<std::uint64_t>();
        o.successes = ev.at("successes").get<std::uint64_t>();
        o.success_rate = ev.at("success_rate").get<double>();
        o.wilson_ci_95 = Interval{ev.at("wilson_ci_95").at(0).get<double>(),
                                  ev.at("wilson_ci_95").at(1).get<double>()};
        o.baseline = ev.at("baseline").get<double>();
        o.baseline_measured = ev.at("baseline_measured").get<bool>();
        if (o.baseline_measured) {
          o.baseline_ci = Interval{ev.at("baseline_ci_95").at(0).get<double>(),
                                   ev.at("baseline_ci_95").at(1).get<double>()};
          o.baseline_successes = ev.at("baseline_successes").get<std::uint64_t>();
        } else {
          o.baseline_ci = Interval{o.baseline, o.baseline};
        }
        o.advantage = ev.at("advantage").get<double>();
      } else {
        o.note = ev.at("note").get<std::string>();
      }
      row.cells.push_back(std::move(cell));
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::vector<VerdictDiff> verify_against_expected(const EvaluationMatrix& matrix,
                                                 const json& fixture) {
  if (!fixture.is_object() || !fixture.contains("expected")) {
    throw std::invalid_argument("malformed fixture: missing 'expected'");
  }
  const json& expected = fixture.at("expected");
  for (const auto& [scheme_key, _] : expected.items()) {
    scheme_from_name(scheme_key);  // unknown scheme rows are an error
  }
  std::vector<VerdictDiff> diffs;
  for (const auto& row : matrix.rows) {
    const std::string skey{scheme_name(row.scheme)};
    if (!expected.contains(skey)) {
      throw std::invalid_argument("fixture has no row for scheme " + skey);
    }
    for (const auto& cell : row.cells) {
      const std::string akey{attack_name(cell.attack)};
      const std::string mkey{medium_name(cell.medium)};
      if (!expected.at(skey).contains(akey) || !expected.at(skey).at(akey).contains(mkey)) {
        throw std::invalid_argument("fixture missing cell " + skey + "/" + akey + "/" + mkey);
      }
      const std::string want = expected.at(skey).at(akey).at(mkey).get<std::string>();
      verdict_class_from_name(want);  // malformed class names are an error
      const std::string got{verdict_class_name(cell.verdict.level)};
      if (want != got) {
        diffs.push_back(VerdictDiff{row.scheme, cell.attack, cell.medium, want, got});
      }
    }
  }
  return diffs;
}

std::string render(const EvaluationMatrix& matrix, RenderFormat format) {
  switch (format) {
    case RenderFormat::Json:
      return matrix.to_json().dump(2) + "\n";
    case RenderFormat::Csv: {
      std::ostringstream out;
      out << "scheme";
      for (const auto& [attack, medium] : matrix_columns()) {
        out << "," << attack_name(attack) << ":" << medium_name(medium);
      }
      out << ",indirect_deanon_resistant\n";
      for (const auto& row : matrix.rows) {
        out << scheme_name(row.scheme);
        for (const auto& cell : row.cells) {
          out << "," << verdict_class_name(cell.verdict.level);
        }
        out << "," << (assess_anonymity(row.scheme, matrix).indirect_deanon_resistant ? "yes" : "no");
        out << "\n";
      }
      return out.str();
    }
    case RenderFormat::Markdown: {
      std::ostringstream out;
      out << "| Scheme |";
      for (const auto& [attack, medium] : matrix_columns()) {
        out << " " << attack_name(attack) << " " << medium_name(medium) << " |";
      }
      out << " indirect de-anon. |\n";
      out << "|---|";
      for (std::size_t i = 0; i < matrix_columns().size() + 1; ++i) out << "---|";
      out << "\n";
      for (const auto& row : matrix.rows) {
        out << "| " << display_name(row.scheme) << " |";
        for (const auto& cell : row.cells) {
          if (cell.verdict.level == VerdictClass::ProbabilisticallyResistant) {
            std::ostringstream p;
            p.precision(3);
            p << cell.verdict.p_est;
            out << " ✓(prob. " << p.str() << ") |";
          } else {
            out << " " << verdict_symbol(cell.verdict.level) << " |";
          }
        }
        const auto a = assess_anonymity(row.scheme, matrix);
        out << (a.indirect_deanon_resistant ? " ✓✓ (" : " ✗ (");
        for (std::size_t i = 0; i < a.reasons.size(); ++i) {
          if (i) out << ", ";
          out << a.reasons[i];
        }
        out << ") |\n";
      }
      return out.str();
    }
  }
  throw std::invalid_argument("unknown render format");
}

std::string default_fixture_path() {
  return std::string(ANONYLINK_DATA_DIR) + "/expected_matrix.json";
}

}  // namespace anonylink
